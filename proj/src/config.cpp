#include "semitherm/config.hpp"

#include <cmath>

#include "semitherm/errors.hpp"
#include "semitherm/expr.hpp"
#include "semitherm/fixtures.hpp"

namespace semitherm {

using nlohmann::json;

const json& require(const json& j, const std::string& key) {
  if (!j.is_object()) throw ConfigError("expected an object around '" + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError("missing key '" + key + "'");
  return *it;
}

double get_double(const json& j, const std::string& key, std::optional<double> def) {
  if (!j.is_object() || !j.contains(key)) {
    if (def) return *def;
    throw ConfigError("missing key '" + key + "'");
  }
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number");
  return v.get<double>();
}

std::int64_t get_int(const json& j, const std::string& key, std::optional<std::int64_t> def) {
  if (!j.is_object() || !j.contains(key)) {
    if (def) return *def;
    throw ConfigError("missing key '" + key + "'");
  }
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError("key '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string get_string(const json& j, const std::string& key, std::optional<std::string> def) {
  if (!j.is_object() || !j.contains(key)) {
    if (def) return *def;
    throw ConfigError("missing key '" + key + "'");
  }
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError("key '" + key + "' must be a string");
  return v.get<std::string>();
}

namespace {

Potential parse_potential(const json& g) {
  const json& p = require(g, "potential");
  if (!p.is_string()) throw ConfigError("potential must be an expression string or \"zero\"");
  const std::string text = p.get<std::string>();
  if (text == "zero") return Potential::zero();
  Potential pot;
  const Expression e = Expression::parse(text);
  pot.fn = [e](double x) { return e(x); };
  pot.holder_alpha = get_double(g, "holder_alpha", 1.0);
  pot.holder_const = get_double(g, "holder_const");
  pot.label = text;
  return pot;
}

}  // namespace

ExpandingSystem parse_system(const json& j) {
  if (j.is_string()) return fixtures::system_by_name(j.get<std::string>());
  const json& alpha = require(j, "alphabet");
  if (!alpha.is_array() || alpha.empty()) throw ConfigError("alphabet must be a nonempty array");
  std::vector<CircleMap> maps;
  std::vector<Potential> pots;
  for (const json& g : alpha) {
    const auto m = get_int(g, "branches");
    if (m < 2) throw ConfigError("branches must be at least 2");
    const double a = get_double(g, "mobius", 0.0);
    maps.push_back(a == 0.0 ? CircleMap::linear(static_cast<int>(m))
                            : CircleMap::mobius(static_cast<int>(m), a));
    pots.push_back(parse_potential(g));
  }
  return ExpandingSystem(std::move(maps), std::move(pots), get_double(j, "a"),
                         get_double(j, "lambda"));
}

MarkovEnvironment parse_environment(const json& j) {
  if (j.is_string()) return fixtures::environment_by_name(j.get<std::string>());
  const json& init = require(j, "initial");
  const json& q = require(j, "transition");
  if (!init.is_array() || !q.is_array()) throw ConfigError("initial/transition must be arrays");
  std::vector<double> p;
  for (const json& x : init) {
    if (!x.is_number()) throw ConfigError("initial entries must be numbers");
    p.push_back(x.get<double>());
  }
  std::vector<std::vector<double>> Q;
  for (const json& row : q) {
    if (!row.is_array()) throw ConfigError("transition rows must be arrays");
    std::vector<double> r;
    for (const json& x : row) {
      if (!x.is_number()) throw ConfigError("transition entries must be numbers");
      r.push_back(x.get<double>());
    }
    Q.push_back(std::move(r));
  }
  bool inv = false;
  if (j.contains("invariant")) {
    if (!j.at("invariant").is_boolean()) throw ConfigError("invariant must be a boolean");
    inv = j.at("invariant").get<bool>();
  }
  return MarkovEnvironment(std::move(p), std::move(Q), inv);
}

Ncifs parse_ifs(const json& j, std::size_t n) {
  if (j.is_string()) return fixtures::ncifs_by_name(j.get<std::string>(), n);
  const json& sys = require(j, "systems");
  if (!sys.is_array()) throw ConfigError("systems must be an array");
  std::vector<std::vector<IfsMap>> out;
  for (const json& s : sys) {
    if (!s.is_array()) throw ConfigError("each IFS system must be an array of maps");
    std::vector<IfsMap> maps;
    for (const json& m : s)
      maps.push_back({get_double(m, "r"), get_double(m, "b"), get_double(m, "bend", 0.0)});
    out.push_back(std::move(maps));
  }
  MarkovEnvironment env = j.contains("environment")
                              ? parse_environment(j.at("environment"))
                              : MarkovEnvironment::bernoulli(std::vector<double>(
                                    out.size(), 1.0 / static_cast<double>(out.size())));
  return Ncifs(std::move(out), std::move(env), n);
}

GridFunction parse_function(const json& j, std::size_t n) {
  if (j.is_number()) return GridFunction::constant(n, j.get<double>());
  if (!j.is_string()) throw ConfigError("functions are expression strings");
  const Expression e = Expression::parse(j.get<std::string>());
  return GridFunction::sample(n, [&](double x) { return e(x); });
}

Word parse_word(const json& j) {
  if (j.is_string()) return Word::parse(j.get<std::string>());
  if (j.is_object()) {
    const Word base = Word::parse(get_string(j, "repeat"));
    return Word::periodic(base, static_cast<std::size_t>(get_int(j, "length")));
  }
  throw ConfigError("words are strings like \"1212\" or {repeat, length}");
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace semitherm
