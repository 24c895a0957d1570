#pragma once

#include <cstddef>
#include <vector>

namespace semitherm {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

// Ordinary least squares y = intercept + slope x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// y ~ prefactor * rate^n, fitted on log y; nonpositive y are an error.
struct GeometricFit {
  double rate = 0.0;
  double prefactor = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};
GeometricFit geometric_fit(const std::vector<double>& n, const std::vector<double>& y);

double mean(const std::vector<double>& x);
double variance(const std::vector<double>& x);

}  // namespace semitherm
