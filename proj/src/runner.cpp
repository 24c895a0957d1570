#include "semitherm/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "semitherm/annealed.hpp"
#include "semitherm/boundary.hpp"
#include "semitherm/config.hpp"
#include "semitherm/errors.hpp"
#include "semitherm/measures.hpp"
#include "semitherm/ncifs.hpp"
#include "semitherm/stats.hpp"
#include "semitherm/transport.hpp"

namespace semitherm {

using nlohmann::json;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : cols_(header.size()) {
    line(header);
  }
  template <class... T>
  void row(const T&... v) {
    std::vector<std::string> cells{cell(v)...};
    if (cells.size() != cols_) throw std::logic_error("csv row width");
    line(cells);
  }
  std::string str() const { return out_.str(); }

 private:
  static std::string cell(double x) { return num(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  std::size_t cols_;
  std::ostringstream out_;
};

struct Context {
  const json& cfg;
  const json& par;
  const RunOptions& opt;
  std::size_t n;
  RunResult result;

  void write(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::path(opt.out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << body;
    result.files.push_back(path.string());
  }
  std::uint64_t seed() const {
    if (opt.seed) return *opt.seed;
    if (cfg.contains("seed")) {
      if (!cfg.at("seed").is_number_unsigned() && !cfg.at("seed").is_number_integer())
        throw ConfigError("seed must be a non-negative integer");
      return cfg.at("seed").get<std::uint64_t>();
    }
    throw ConfigError("this experiment is Monte-Carlo: a seed is mandatory (config 'seed' or --seed)");
  }
  std::size_t size(const std::string& key, std::int64_t def) const {
    const auto v = get_int(par, key, def);
    if (v < 0) throw ConfigError("key '" + key + "' must be non-negative");
    return static_cast<std::size_t>(v);
  }
};

void check_word(const Transfer& T, const Word& w, const std::string& what) {
  for (int l : w.letters())
    if (l >= T.alphabet_size()) throw ConfigError(what + " uses a letter outside the alphabet");
}

Transfer make_transfer(Context& c) { return Transfer(parse_system(require(c.cfg, "system")), c.n); }

json fit_json(const GeometricFit& f) {
  return {{"rate", f.rate}, {"prefactor", f.prefactor}, {"r2", f.r2}, {"points", f.points}};
}

void quenched_measure(Context& c) {
  Transfer T = make_transfer(c);
  const Word omega = parse_word(require(c.par, "omega"));
  const Word u = c.par.contains("u") ? parse_word(c.par.at("u")) : Word();
  check_word(T, omega, "omega");
  check_word(T, u, "u");
  const std::size_t depth = c.size("depth", static_cast<std::int64_t>(std::min<std::size_t>(omega.size(), 24)));
  if (depth == 0 || depth > omega.size()) throw ConfigError("depth must lie in [1, |omega|]");
  const auto mc = T.system().metric_constants();
  Csv gaps({"depth", "gap"});
  GridMeasure prev;
  for (std::size_t l = 1; l <= depth; ++l) {
    GridMeasure m = quenched_conformal(T, u, omega, l, false).measure.normalized();
    if (l > 1) gaps.row(l, wasserstein_dstar(mc, prev, m));
    prev = std::move(m);
  }
  Csv meas({"node", "x", "weight"});
  for (std::size_t j = 0; j < c.n; ++j)
    meas.row(j, static_cast<double>(j) / static_cast<double>(c.n), prev[j]);
  c.write("measure.csv", meas.str());
  c.write("gaps.csv", gaps.str());
  c.result.summary = {{"u", u.str()}, {"omega", omega.str()}, {"depth", depth}};
}

void contraction(Context& c) {
  Transfer T = make_transfer(c);
  ContractionOptions o;
  o.trials = c.size("trials", 12);
  o.min_length = c.size("min_length", 1);
  o.max_length = c.size("max_length", 20);
  o.u_length = c.size("u_length", 3);
  o.seed = c.seed();
  const std::size_t span = c.size("span", 10);
  const ContractionFit fm = fit_contraction(contraction_rate(T, o).points, span);
  const ContractionFit ff = fit_contraction(contraction_rate_functions(T, o).points, span);
  Csv csv({"kind", "length", "mean_log_ratio", "max_log_ratio"});
  for (const auto& p : fm.points) csv.row("measure", p.length, p.mean_log_ratio, p.max_log_ratio);
  for (const auto& p : ff.points) csv.row("function", p.length, p.mean_log_ratio, p.max_log_ratio);
  c.write("contraction.csv", csv.str());
  auto fj = [](const ContractionFit& f) {
    return json{{"k0_hat", f.k0_hat}, {"s_hat", f.s_hat}, {"r2", f.r2}, {"fit_from", f.fit_from},
                {"fit_to", f.fit_to}};
  };
  c.result.summary = {{"measure", fj(fm)}, {"function", fj(ff)}};
}

void eigen_cocycle(Context& c) {
  Transfer T = make_transfer(c);
  const Word omega = parse_word(require(c.par, "omega"));
  const Word u = parse_word(require(c.par, "u"));
  check_word(T, omega, "omega");
  check_word(T, u, "u");
  const std::size_t depth = c.size("depth", static_cast<std::int64_t>(omega.size()));
  if (depth == 0 || depth > omega.size()) throw ConfigError("depth must lie in [1, |omega|]");
  const GridMeasure mu = quenched_conformal(T, Word(), omega, depth, false).measure.normalized();
  const EigenData e = eigen_data(T, u, mu);
  Csv csv({"node", "x", "h"});
  for (std::size_t j = 0; j < c.n; ++j) csv.row(j, static_cast<double>(j) / static_cast<double>(c.n), e.h[j]);
  c.write("eigenfunction.csv", csv.str());
  json rows = json::array();
  for (std::size_t k = 1; k < u.size(); ++k) {
    const Word a = u.prefix(k), b = u.drop(k);
    const Word bw = b + omega;
    const GridMeasure mbw = quenched_conformal(T, Word(), bw, std::min(bw.size(), depth + b.size()), false).measure.normalized();
    const double lab = eigen_data(T, a, mbw).log_lambda + eigen_data(T, b, mu).log_lambda;
    rows.push_back({{"split", k}, {"log_lambda_product", lab}, {"defect", std::fabs(std::exp(lab - e.log_lambda) - 1.0)}});
  }
  c.result.summary = {{"u", u.str()}, {"lambda", e.lambda}, {"log_lambda", e.log_lambda},
                      {"h_integral", mu.integrate(e.h)}, {"cocycle", rows}};
}

void annealed_spectrum(Context& c) {
  Transfer T = make_transfer(c);
  const MarkovEnvironment env = parse_environment(require(c.cfg, "environment"));
  const GridFunction f = parse_function(c.par.value("f", json("cos(2*pi*x)")), c.n);
  const auto r = annealed_convergence(T, env, f, c.size("n_lo", 10), c.size("n_hi", 30),
                                      c.size("iota_depth", 5), c.size("n_limit", 120));
  Csv csv({"n", "residual", "ratio_residual"});
  for (std::size_t i = 0; i < r.n.size(); ++i) csv.row(r.n[i], r.residual[i], r.ratio_residual[i]);
  c.write("spectrum.csv", csv.str());
  c.result.summary = {{"beta", r.beta}, {"beta_iota", r.beta_iota}, {"beta_iota_gap", r.beta_iota_gap},
                      {"pi_f", r.pi_f}, {"pi_f_iota", r.pi_f_iota}, {"fit", fit_json(r.fit)}};
}

void annealed_decay_exp(Context& c) {
  Transfer T = make_transfer(c);
  const MarkovEnvironment env = parse_environment(require(c.cfg, "environment"));
  const GridFunction f = parse_function(c.par.value("f", json("cos(2*pi*x)")), c.n);
  const GridFunction g = parse_function(c.par.value("g", json("cos(2*pi*x)+0.5*sin(2*pi*x)")), c.n);
  DecayOptions o;
  o.n_lo = c.size("n_lo", 1);
  o.n_hi = c.size("n_hi", 12);
  o.samples = c.size("samples", 1000);
  o.sigma_length = c.size("sigma_length", 24);
  o.tail_length = c.size("tail_length", 24);
  o.strata_depth = c.size("strata_depth", 0);
  o.seed = c.seed();
  const DecayReport r = annealed_decay(T, env, f, g, o);
  Csv csv({"n", "lhs", "discrepancy", "se"});
  for (std::size_t i = 0; i < r.n.size(); ++i) csv.row(r.n[i], r.lhs[i], r.discrepancy[i], r.se[i]);
  c.write("decay.csv", csv.str());
  c.result.summary = {{"pi_tilde", r.pi_tilde}, {"pi_tilde_se", r.pi_tilde_se}, {"mean_mu_g", r.mean_mu_g},
                      {"strata", r.strata}, {"status", r.status}, {"fit_points", r.fit_points}};
  if (r.fitted) c.result.summary["fit"] = fit_json(r.fit);
}

void equidistribution_exp(Context& c) {
  Transfer T = make_transfer(c);
  const MarkovEnvironment env = parse_environment(require(c.cfg, "environment"));
  std::vector<std::size_t> ns;
  if (c.par.contains("n_values")) {
    for (const json& v : c.par.at("n_values")) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1) throw ConfigError("n_values must be positive integers");
      ns.push_back(v.get<std::size_t>());
    }
  } else {
    for (std::size_t n = 2; n <= 30; n += 2) ns.push_back(n);
  }
  const std::size_t x1 = c.size("node1", 0), x2 = c.size("node2", static_cast<std::int64_t>(c.n / 3));
  if (x1 >= c.n || x2 >= c.n) throw ConfigError("nodes must lie on the grid");
  const auto r = equidistribution(T, env, x1, x2, ns, c.size("n_limit", 80));
  Csv csv({"n", "w_pair", "w_to_limit", "pressure"});
  for (std::size_t i = 0; i < r.n.size(); ++i) csv.row(r.n[i], r.w_pair[i], r.w_to_limit[i], r.pressure[i]);
  c.write("equidistribution.csv", csv.str());
  c.result.summary = {{"fit", fit_json(r.fit)}, {"pressure_last", r.pressure.back()}};
}

void asip(Context& c) {
  Transfer T = make_transfer(c);
  const std::size_t n_max = c.size("n_max", 200), depth = c.size("depth", 40);
  Word omega = parse_word(require(c.par, "omega"));
  check_word(T, omega, "omega");
  if (omega.size() < n_max + 1 + depth) omega = Word::periodic(omega, n_max + 1 + depth);
  const GridFunction f = parse_function(c.par.value("f", json("cos(2*pi*x)")), c.n);
  const auto d = build_decomposition(T, omega, f, n_max, depth);
  const std::size_t samples = c.size("samples", 10000);
  std::vector<std::size_t> clt_n{n_max};
  if (c.par.contains("clt_n")) {
    clt_n.clear();
    for (const json& v : c.par.at("clt_n")) clt_n.push_back(v.get<std::size_t>());
  }
  const std::uint64_t seed = c.seed();
  std::map<std::size_t, CltReport> clt;
  for (std::size_t n : clt_n) clt[n] = quenched_clt_check(T, d, n, samples, seed);
  Csv csv({"n", "s_n_sq", "sigma_n_sq", "h_sup", "ks", "variance_ratio"});
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto it = clt.find(n);
    const std::string ks = it == clt.end() ? "" : num(it->second.ks);
    const std::string vr = it == clt.end() ? "" : num(it->second.variance_ratio);
    csv.row(n, d.s_sq[n], d.sigma_sq[n], d.h_n[n].sup_norm(), ks, vr);
  }
  c.write("asip.csv", csv.str());
  std::vector<double> pts;
  for (int i = 0; i < 32; ++i) pts.push_back((i + 0.37) / 32.0);
  json cl = json::array();
  for (const auto& [n, r] : clt)
    cl.push_back({{"n", n}, {"status", r.status}, {"ks", r.ks}, {"variance_ratio", r.variance_ratio}});
  c.result.summary = {{"telescoping_error", telescoping_error(T, d, pts)}, {"h_sup", d.h_sup()}, {"clt", cl}};
}

std::vector<double> delta_grid(const json& par) {
  std::vector<double> ds;
  if (par.contains("deltas")) {
    for (const json& v : par.at("deltas")) {
      if (!v.is_number()) throw ConfigError("deltas must be numbers");
      ds.push_back(v.get<double>());
    }
  } else {
    const double lo = get_double(par, "delta_from", 0.0), hi = get_double(par, "delta_to", 2.0);
    const auto cnt = get_int(par, "delta_count", 50);
    if (cnt < 2 || !(hi > lo)) throw ConfigError("delta grid needs delta_to > delta_from and count >= 2");
    for (std::int64_t i = 0; i < cnt; ++i) ds.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cnt - 1));
  }
  for (double d : ds)
    if (!(d >= 0.0)) throw ConfigError("delta must be non-negative");
  return ds;
}

void ncifs_pressure(Context& c) {
  const Ncifs ifs = parse_ifs(require(c.cfg, "ifs"), c.n);
  const std::size_t n_max = c.size("n_max", 40);
  Csv csv({"delta", "P_delta", "stability", "spread"});
  for (double d : delta_grid(c.par)) {
    const auto p = annealed_pressure(ifs, d, n_max);
    csv.row(d, p.P, p.stability, p.spread);
  }
  c.write("pressure.csv", csv.str());
  c.result.summary = {{"n_max", n_max}};
}

void bowen(Context& c) {
  const Ncifs ifs = parse_ifs(require(c.cfg, "ifs"), c.n);
  const auto r = bowen_root(ifs, get_double(c.par, "tol", 1e-10), c.size("n_max", 40));
  c.result.summary = {{"delta0", r.delta0}, {"bracket", {r.lo, r.hi}}, {"iterations", r.iterations}};
}

void boundary_probe(Context& c) {
  Transfer T = make_transfer(c);
  std::vector<Word> words;
  const json& seq = require(c.par, "words");
  if (seq.is_array()) {
    for (const json& w : seq) words.push_back(parse_word(w));
  } else {
    words = nested_words(Word::parse(get_string(seq, "left")), Word::parse(get_string(seq, "core")),
                         Word::parse(get_string(seq, "right")), static_cast<std::size_t>(get_int(seq, "from", 1)),
                         static_cast<std::size_t>(get_int(seq, "to", 6)));
  }
  for (const auto& w : words) check_word(T, w, "word");
  ElementCache cache(T);
  const auto p = cauchy_probe(cache, words);
  Csv csv({"index", "word", "next", "d_G", "wbar", "word_metric"});
  for (std::size_t i = 0; i < p.gaps.size(); ++i)
    csv.row(i, words[i].str(), words[i + 1].str(), p.gaps[i], p.wbar_gaps[i], word_metric(words[i], words[i + 1]));
  c.write("gaps.csv", csv.str());
  Csv lim({"node", "x", "weight"});
  for (std::size_t j = 0; j < c.n; ++j) lim.row(j, static_cast<double>(j) / static_cast<double>(c.n), p.limit[j]);
  c.write("limit_measure.csv", lim.str());
  c.result.summary = {{"is_cauchy", p.is_cauchy}, {"fit", fit_json(p.fit)}, {"limit_measure", "limit_measure.csv"}};
  if (!p.is_cauchy) c.result.summary["offending_gap"] = p.offending;
}

using Handler = void (*)(Context&);
const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h = {
      {"quenched-measure", quenched_measure}, {"contraction-rate", contraction},
      {"eigen-cocycle", eigen_cocycle},       {"annealed-spectrum", annealed_spectrum},
      {"annealed-decay", annealed_decay_exp}, {"equidistribution", equidistribution_exp},
      {"asip", asip},                         {"ncifs-pressure", ncifs_pressure},
      {"bowen-root", bowen},                  {"boundary-probe", boundary_probe},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& h : handlers()) n.push_back(h.first);
    return n;
  }();
  return names;
}

RunResult run_experiment(const std::string& experiment, const json& config, const RunOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  if (config.contains("experiment") && get_string(config, "experiment") != experiment)
    throw ConfigError("config experiment '" + get_string(config, "experiment") +
                      "' does not match subcommand '" + experiment + "'");
  Handler h = nullptr;
  for (const auto& [name, fn] : handlers())
    if (name == experiment) h = fn;
  if (!h) throw ConfigError("unknown experiment '" + experiment + "'");
  static const json empty = json::object();
  const json& par = config.contains("parameters") ? config.at("parameters") : empty;
  if (!par.is_object()) throw ConfigError("parameters must be an object");
  std::size_t n = kDefaultGridSize;
  if (opt.grid_n) n = *opt.grid_n;
  else if (config.contains("grid_n")) n = static_cast<std::size_t>(get_int(config, "grid_n"));
  if (n < 16 || n > (1u << 16)) throw ConfigError("grid_n must lie in [16, 65536]");
  std::filesystem::create_directories(opt.out_dir);

  Context c{config, par, opt, n, {}};
  h(c);
  c.write(experiment + ".json", c.result.summary.dump(2) + "\n");

  json eff = config;
  eff["grid_n"] = n;
  if (opt.seed) eff["seed"] = *opt.seed;
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(eff.dump())));
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json files = json::array();
  for (const auto& f : c.result.files) files.push_back(std::filesystem::path(f).filename().string());
  const json manifest = {{"experiment", experiment}, {"config_hash", std::string("fnv1a64:") + hash},
                         {"version", kVersion},       {"wall_time_s", wall},
                         {"grid_n", n},               {"outputs", files}};
  c.write("manifest.json", manifest.dump(2) + "\n");
  return c.result;
}

}  // namespace semitherm
