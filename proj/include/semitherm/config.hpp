#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "semitherm/dynamics.hpp"
#include "semitherm/environment.hpp"
#include "semitherm/grid.hpp"
#include "semitherm/ncifs.hpp"

namespace semitherm {

// Config documents are JSON. Every parser throws ConfigError with the
// offending key on schema violations.
//
// system:      "fixture-name" | {alphabet: [{branches, mobius?, potential: expr|"zero",
//                                            holder_alpha, holder_const}], a, lambda}
// environment: "fixture-name" | {initial: [..], transition: [[..]], invariant: bool}
// ifs:         "fixture-name" | {systems: [[{r, b, bend?}, ..], ..], environment}
ExpandingSystem parse_system(const nlohmann::json& j);
MarkovEnvironment parse_environment(const nlohmann::json& j);
Ncifs parse_ifs(const nlohmann::json& j, std::size_t n);
GridFunction parse_function(const nlohmann::json& j, std::size_t n);
Word parse_word(const nlohmann::json& j);

// Typed lookups with a path in the error message.
const nlohmann::json& require(const nlohmann::json& j, const std::string& key);
double get_double(const nlohmann::json& j, const std::string& key, std::optional<double> def = {});
std::int64_t get_int(const nlohmann::json& j, const std::string& key,
                     std::optional<std::int64_t> def = {});
std::string get_string(const nlohmann::json& j, const std::string& key,
                       std::optional<std::string> def = {});

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace semitherm
