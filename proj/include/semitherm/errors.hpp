#pragma once

#include <stdexcept>
#include <string>

namespace semitherm {

// Malformed system, environment or experiment description.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical guard tripped: branch-count cap, non-positive normaliser,
// non-convergent eigensolve, degenerate regression, ...
class NumericalGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace semitherm
