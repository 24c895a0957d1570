#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace semitherm {

inline constexpr const char* kVersion = "1.0.0";

struct RunOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid_n;
};

struct RunResult {
  std::vector<std::string> files;  // written artifacts, manifest last
  nlohmann::json summary;          // scalars also written to <experiment>.json
};

const std::vector<std::string>& experiment_names();

// Runs one experiment from a config document. Throws ConfigError on schema
// problems and NumericalGuard when a numerical precondition fails.
RunResult run_experiment(const std::string& experiment, const nlohmann::json& config,
                         const RunOptions& opt);

}  // namespace semitherm
