#include "semitherm/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "semitherm/errors.hpp"
#include "semitherm/fit.hpp"
#include "semitherm/parallel.hpp"
#include "semitherm/rng.hpp"
#include "semitherm/transport.hpp"

namespace semitherm {

GridMeasure dual_apply(const Transfer& T, const Word& u, const Word& v, const GridMeasure& mu) {
  mu.require_probability();
  return T.dual_quotient(u, v, mu);
}

QuenchedMeasure quenched_conformal_from(const Transfer& T, const Word& u, const Word& omega,
                                        std::size_t l, const GridMeasure& start,
                                        bool record_gap) {
  if (omega.size() < l) throw ConfigError("environment word shorter than requested depth");
  QuenchedMeasure q;
  q.u = u;
  q.omega = omega.prefix(l);
  q.measure = T.dual_quotient(u, q.omega, start);
  if (record_gap && l >= 1) {
    const GridMeasure prev = T.dual_quotient(u, omega.prefix(l - 1), start);
    q.gap = wasserstein_dstar(T.system().metric_constants(), prev.normalized(),
                              q.measure.normalized());
  }
  return q;
}

QuenchedMeasure quenched_conformal(const Transfer& T, const Word& u, const Word& omega,
                                   std::size_t l, bool record_gap) {
  return quenched_conformal_from(T, u, omega, l, GridMeasure::dirac(T.grid_size(), 0), record_gap);
}

double quenched_functional(const Transfer& T, const Word& u, const Word& omega, std::size_t l,
                           const GridFunction& f, std::size_t node) {
  if (omega.size() < l) throw ConfigError("environment word shorter than requested depth");
  return T.normalized_quotient(u, omega.prefix(l), f)[node];
}

EigenData eigen_data(const Transfer& T, const Word& u, const GridMeasure& mu_omega) {
  const ScaledFunction g = T.apply_word_scaled(u, GridFunction::constant(T.grid_size(), 1.0));
  const double c = mu_omega.integrate(g.f);
  if (!(c > 0.0)) throw NumericalGuard("L_u(1) integrates to zero");
  EigenData e;
  e.log_lambda = g.log_scale + std::log(c);
  e.lambda = std::exp(e.log_lambda);
  e.h = g.f * (1.0 / c);
  return e;
}

QuenchedMeasure bilateral_equilibrium(const Transfer& T, const Word& sigma_suffix,
                                      const Word& omega, std::size_t k, std::size_t l,
                                      bool record_gap) {
  const Word u = sigma_suffix.suffix(std::min(k, sigma_suffix.size()));
  return quenched_conformal(T, u, omega, l, record_gap);
}

GridMeasure periodic_equilibrium(const Transfer& T, const Word& w, std::size_t reps) {
  const Word p = Word::periodic(w, reps * w.size());
  return bilateral_equilibrium(T, p, p, p.size(), p.size()).measure;
}

GridMeasure pushforward(const Transfer& T, const Word& u, const GridMeasure& mu) {
  const std::size_t n = mu.size();
  std::vector<double> pts, ms;
  for (std::size_t j = 0; j < n; ++j) {
    if (mu[j] == 0.0) continue;
    pts.push_back(apply_word_map(T.system(), u, static_cast<double>(j) / static_cast<double>(n)));
    ms.push_back(mu[j]);
  }
  return GridMeasure::binned(n, pts, ms);
}

DensePerron dense_perron(const Transfer& T, const Word& w, double tol, int max_iter) {
  const auto n = static_cast<Eigen::Index>(T.grid_size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
  for (int l : w.letters()) M = T.dense_matrix(l) * M;
  DensePerron r;
  Eigen::VectorXd h = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd mu = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd Mt = M.transpose();
  int it = 0;
  double val = 0.0;
  for (; it < max_iter; ++it) {
    Eigen::VectorXd h2 = M * h;
    const double s = h2.maxCoeff();
    h2 /= s;
    Eigen::VectorXd mu2 = Mt * mu;
    val = mu2.sum() / mu.sum();
    mu2 /= mu2.sum();
    const double dh = (h2 - h).cwiseAbs().maxCoeff();
    const double dm = (mu2 - mu).cwiseAbs().sum();
    h = h2;
    mu = mu2;
    if (dh < tol && dm < tol) break;
  }
  if (it == max_iter) throw NumericalGuard("dense power iteration did not converge");
  r.value = val;
  r.right = GridFunction(std::vector<double>(h.data(), h.data() + n));
  r.left = GridMeasure(std::vector<double>(mu.data(), mu.data() + n));
  r.iterations = it;
  return r;
}

namespace {

Word random_word(std::mt19937_64& rng, int k, std::size_t len) {
  std::uniform_int_distribution<int> d(0, k - 1);
  std::vector<int> l(len);
  for (auto& x : l) x = d(rng);
  return Word(std::move(l));
}

GridMeasure random_atoms(std::mt19937_64& rng, std::size_t n, int atoms) {
  std::uniform_int_distribution<std::size_t> node(0, n - 1);
  std::uniform_real_distribution<double> w(0.1, 1.0);
  std::vector<double> v(n, 0.0);
  for (int a = 0; a < atoms; ++a) v[node(rng)] += w(rng);
  return GridMeasure(std::move(v)).normalized();
}

GridFunction random_trig(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
  double a[3], p[3];
  for (int k = 0; k < 3; ++k) {
    a[k] = amp(rng);
    p[k] = ph(rng);
  }
  return GridFunction::sample(n, [&](double x) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += a[k] * std::cos(2.0 * std::numbers::pi * (k + 1) * x + p[k]);
    return s;
  });
}

std::vector<ContractionPoint> collect(const std::vector<std::vector<double>>& logs,
                                      const ContractionOptions& opt) {
  std::vector<ContractionPoint> pts;
  for (std::size_t L = opt.min_length; L <= opt.max_length; ++L) {
    std::vector<double> col;
    bool ok = true;
    for (const auto& tr : logs) {
      const double x = tr[L - opt.min_length];
      if (!std::isfinite(x)) ok = false;
      col.push_back(x);
    }
    if (!ok) continue;
    pts.push_back({L, mean(col), *std::max_element(col.begin(), col.end())});
  }
  return pts;
}

}  // namespace

ContractionFit fit_contraction(std::vector<ContractionPoint> pts, std::size_t span) {
  if (pts.size() < 3) throw NumericalGuard("regression degenerate: too few lengths");
  std::sort(pts.begin(), pts.end(),
            [](const ContractionPoint& a, const ContractionPoint& b) { return a.length < b.length; });
  ContractionFit f;
  f.points = pts;
  std::size_t first = pts.size();
  for (std::size_t i = pts.size(); i-- > 0;) {
    if (pts[i].max_log_ratio < 0.0)
      first = i;
    else
      break;
  }
  if (first == pts.size()) throw NumericalGuard("no length at which every pair contracted");
  f.k0_hat = pts[first].length;
  std::vector<double> x, y;
  for (std::size_t i = first; i < pts.size() && pts[i].length <= f.k0_hat + span; ++i) {
    x.push_back(static_cast<double>(pts[i].length));
    y.push_back(pts[i].mean_log_ratio);
  }
  if (x.size() < 3) throw NumericalGuard("regression degenerate: too few contracted lengths");
  const LinearFit lf = linear_fit(x, y);
  f.s_hat = std::exp(lf.slope);
  f.r2 = lf.r2;
  f.fit_from = static_cast<std::size_t>(x.front());
  f.fit_to = static_cast<std::size_t>(x.back());
  return f;
}

ContractionFit contraction_rate(const Transfer& T, const ContractionOptions& opt) {
  const auto mc = T.system().metric_constants();
  const std::size_t n = T.grid_size();
  const int k = T.alphabet_size();
  const std::size_t nl = opt.max_length - opt.min_length + 1;
  std::vector<std::vector<double>> logs(opt.trials, std::vector<double>(nl, 0.0));
  parallel_for(opt.trials, [&](std::size_t t) {
    auto rng = stream_for(opt.seed, t);
    const Word u = random_word(rng, k, opt.u_length);
    const Word v = random_word(rng, k, opt.max_length);
    GridMeasure a = random_atoms(rng, n, 3);
    GridMeasure b = random_atoms(rng, n, 3);
    const double w0 = wasserstein_dstar(mc, a, b);
    for (std::size_t L = opt.min_length; L <= opt.max_length; ++L) {
      const Word vl = v.prefix(L);
      const GridMeasure pa = T.dual_quotient(u, vl, a).normalized();
      const GridMeasure pb = T.dual_quotient(u, vl, b).normalized();
      const double w = wasserstein_dstar(mc, pa, pb);
      logs[t][L - opt.min_length] =
          w > 0.0 ? std::log(w) - std::log(w0) : -std::numeric_limits<double>::infinity();
    }
  });
  return fit_contraction(collect(logs, opt), 10);
}

ContractionFit contraction_rate_functions(const Transfer& T, const ContractionOptions& opt) {
  const auto mc = T.system().metric_constants();
  const std::size_t n = T.grid_size();
  const int k = T.alphabet_size();
  const std::size_t nl = opt.max_length - opt.min_length + 1;
  std::vector<std::vector<double>> logs(opt.trials, std::vector<double>(nl, 0.0));
  parallel_for(opt.trials, [&](std::size_t t) {
    auto rng = stream_for(opt.seed ^ 0xf00dULL, t);
    const Word u = random_word(rng, k, opt.u_length);
    const Word v = random_word(rng, k, opt.max_length);
    const GridFunction f = random_trig(rng, n);
    const double d0 = holder_seminorms(mc, f).D_bar;
    // P_u^{[v]_L} f built by the composition law, one letter at a time
    GridFunction g = T.one_image(u);
    GridFunction h = f;
    for (std::size_t L = 1; L <= opt.max_length; ++L) {
      h = T.quotient_with_weight(g, Word({v[L - 1]}), h);
      g = T.apply_letter(v[L - 1], g);
      g = g * (1.0 / g.max());
      if (L < opt.min_length) continue;
      const double d = holder_seminorms(mc, h).D_bar;
      logs[t][L - opt.min_length] =
          d > 0.0 ? std::log(d) - std::log(d0) : -std::numeric_limits<double>::infinity();
    }
  });
  return fit_contraction(collect(logs, opt), 10);
}

}  // namespace semitherm
