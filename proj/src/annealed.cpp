#include "semitherm/annealed.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "semitherm/errors.hpp"
#include "semitherm/measures.hpp"
#include "semitherm/parallel.hpp"
#include "semitherm/rng.hpp"
#include "semitherm/transport.hpp"

namespace semitherm {

namespace {

void require_match(const Transfer& T, const MarkovEnvironment& env) {
  if (env.size() != T.alphabet_size())
    throw ConfigError("environment size must match the alphabet size");
}

double joint_sup(const std::vector<GridFunction>& H) {
  double s = 0.0;
  for (const auto& h : H) s = std::max(s, h.sup_norm());
  return s;
}

ScaledFunction normalized(const GridFunction& f, double log_scale) {
  const double s = f.sup_norm();
  if (s == 0.0) return {f, log_scale};
  return {f * (1.0 / s), log_scale + std::log(s)};
}

}  // namespace

std::vector<ScaledFunction> annealed_sequence(const Transfer& T, const MarkovEnvironment& env,
                                              const GridFunction& f, std::size_t n_max) {
  require_match(T, env);
  const int k = env.size();
  const std::size_t N = T.grid_size();
  std::vector<ScaledFunction> out;
  out.reserve(n_max);
  std::vector<GridFunction> H(static_cast<std::size_t>(k));
  double log_scale = 0.0;
  for (int b = 0; b < k; ++b) H[static_cast<std::size_t>(b)] = T.apply_letter(b, f) * env.initial(b);
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) {
      std::vector<GridFunction> next(static_cast<std::size_t>(k));
      for (int c = 0; c < k; ++c) {
        GridFunction acc = GridFunction::constant(N, 0.0);
        for (int b = 0; b < k; ++b)
          if (env.Q(b, c) > 0.0) acc = acc + H[static_cast<std::size_t>(b)] * env.Q(b, c);
        next[static_cast<std::size_t>(c)] = T.apply_letter(c, acc);
      }
      H = std::move(next);
    }
    const double s = joint_sup(H);
    if (s > 0.0) {
      for (auto& h : H) h = h * (1.0 / s);
      log_scale += std::log(s);
    }
    GridFunction A = GridFunction::constant(N, 0.0);
    for (const auto& h : H) A = A + h;
    out.push_back(normalized(A, log_scale));
  }
  return out;
}

ScaledFunction annealed_apply(const Transfer& T, const MarkovEnvironment& env, std::size_t n,
                              const GridFunction& f) {
  if (n == 0) throw ConfigError("annealed operator needs n >= 1");
  return annealed_sequence(T, env, f, n).back();
}

double augmented_perron_value(const Transfer& T, const MarkovEnvironment& env, double tol,
                              int max_iter) {
  require_match(T, env);
  const int k = env.size();
  const std::size_t N = T.grid_size();
  std::vector<GridFunction> H(static_cast<std::size_t>(k), GridFunction::constant(N, 1.0));
  double lo = 0.0, hi = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<GridFunction> next(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
      GridFunction acc = GridFunction::constant(N, 0.0);
      for (int b = 0; b < k; ++b)
        if (env.Q(b, c) > 0.0) acc = acc + H[static_cast<std::size_t>(b)] * env.Q(b, c);
      next[static_cast<std::size_t>(c)] = T.apply_letter(c, acc);
    }
    lo = std::numeric_limits<double>::infinity();
    hi = 0.0;
    for (std::size_t c = 0; c < next.size(); ++c)
      for (std::size_t j = 0; j < N; ++j) {
        const double r = next[c][j] / H[c][j];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    const double s = joint_sup(next);
    for (auto& h : next) h = h * (1.0 / s);
    H = std::move(next);
    if (hi - lo <= tol * hi) return 0.5 * (lo + hi);
  }
  throw NumericalGuard("augmented power iteration did not converge");
}

double SpectralData::pi(const GridFunction& f) const {
  double s = 0.0;
  for (std::size_t w = 0; w < m.size(); ++w) s += m[w] * mu[w].integrate(f);
  return s;
}

SpectralData iota_spectrum(const Transfer& T, const MarkovEnvironment& env, std::size_t depth,
                           const Word& tail, double tol) {
  require_match(T, env);
  if (depth == 0) throw ConfigError("iota depth must be at least 1");
  const int k = env.size();
  std::size_t K = 1;
  for (std::size_t j = 0; j < depth; ++j) K *= static_cast<std::size_t>(k);
  if (K > 4096) throw ConfigError("iota depth too large for the memory budget");
  SpectralData sd;
  sd.depth = depth;
  sd.tail = tail;
  sd.cylinders.resize(K);
  sd.mu.resize(K);
  sd.lambda.assign(K, std::vector<double>(static_cast<std::size_t>(k), 0.0));
  std::vector<GridFunction> Li1;
  for (int i = 0; i < k; ++i) Li1.push_back(T.apply_letter(i, GridFunction::constant(T.grid_size(), 1.0)));
  for (std::size_t w = 0; w < K; ++w) {
    std::vector<int> l(depth);
    std::size_t r = w;
    for (std::size_t j = depth; j-- > 0;) {
      l[j] = static_cast<int>(r % static_cast<std::size_t>(k));
      r /= static_cast<std::size_t>(k);
    }
    sd.cylinders[w] = Word(l);
  }
  parallel_for(K, [&](std::size_t w) {
    const Word om = sd.cylinders[w] + tail;
    sd.mu[w] = quenched_conformal(T, Word(), om, om.size(), false).measure.normalized();
    for (int i = 0; i < k; ++i)
      sd.lambda[w][static_cast<std::size_t>(i)] = sd.mu[w].integrate(Li1[static_cast<std::size_t>(i)]);
  });
  const auto Ki = static_cast<Eigen::Index>(K);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(Ki, Ki);
  const std::size_t high = K / static_cast<std::size_t>(k);
  for (std::size_t w = 0; w < K; ++w) {
    const int first = sd.cylinders[w][0];
    for (int i = 0; i < k; ++i) {
      const double p = env.p_cocycle(i, first);
      if (p == 0.0) continue;
      const std::size_t col = static_cast<std::size_t>(i) * high + w / static_cast<std::size_t>(k);
      B(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(col)) +=
          sd.lambda[w][static_cast<std::size_t>(i)] * p;
    }
  }
  Eigen::VectorXd g = Eigen::VectorXd::Ones(Ki);
  Eigen::VectorXd m = Eigen::VectorXd::Constant(Ki, 1.0 / static_cast<double>(K));
  const Eigen::MatrixXd Bt = B.transpose();
  double beta = 0.0;
  int it = 0;
  for (; it < 100000; ++it) {
    Eigen::VectorXd g2 = B * g;
    const double lo = (g2.array() / g.array()).minCoeff();
    const double hi = (g2.array() / g.array()).maxCoeff();
    g = g2 / g2.maxCoeff();
    Eigen::VectorXd m2 = Bt * m;
    const double ml = (m2.array() / m.array()).minCoeff();
    const double mh = (m2.array() / m.array()).maxCoeff();
    m = m2 / m2.sum();
    beta = 0.5 * (lo + hi);
    if (hi - lo <= tol * hi && mh - ml <= tol * mh) break;
  }
  if (it == 100000) throw NumericalGuard("iota power iteration did not converge");
  g /= m.dot(g);
  sd.beta = beta;
  sd.iterations = it;
  sd.right_residual = (B * g - beta * g).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff();
  sd.left_residual = (Bt * m - beta * m).cwiseAbs().sum();
  sd.g_o.assign(g.data(), g.data() + Ki);
  sd.m.assign(m.data(), m.data() + Ki);
  return sd;
}

AnnealedConvergence annealed_convergence(const Transfer& T, const MarkovEnvironment& env,
                                         const GridFunction& f, std::size_t n_lo,
                                         std::size_t n_hi, std::size_t iota_depth,
                                         std::size_t n_limit) {
  if (n_lo < 1 || n_hi < n_lo || n_limit <= n_hi) throw ConfigError("bad n range");
  const std::size_t N = T.grid_size();
  AnnealedConvergence r;
  r.beta = augmented_perron_value(T, env);
  const double lb = std::log(r.beta);
  const auto sf = annealed_sequence(T, env, f, n_limit);
  const auto s1 = annealed_sequence(T, env, GridFunction::constant(N, 1.0), n_limit);
  const ScaledFunction& last = s1.back();
  r.h = last.f * std::exp(last.log_scale - static_cast<double>(n_limit) * lb);
  {
    const ScaledFunction& lf = sf.back();
    const GridFunction q = lf.f * std::exp(lf.log_scale - last.log_scale) / last.f;
    r.pi_f = mean(q.values());
  }
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    const ScaledFunction& a = sf[n - 1];
    const ScaledFunction& o = s1[n - 1];
    const GridFunction val = a.f * std::exp(a.log_scale - static_cast<double>(n) * lb) / r.h;
    const GridFunction rat = a.f * std::exp(a.log_scale - o.log_scale) / o.f;
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      e1 = std::max(e1, std::fabs(val[j] - r.pi_f));
      e2 = std::max(e2, std::fabs(rat[j] - r.pi_f));
    }
    r.n.push_back(n);
    r.residual.push_back(e1);
    r.ratio_residual.push_back(e2);
  }
  const Word tail = Word::repeat(0, 24);
  const SpectralData sd = iota_spectrum(T, env, iota_depth, tail);
  r.beta_iota = sd.beta;
  r.pi_f_iota = sd.pi(f);
  if (iota_depth > 1) r.beta_iota_gap = std::fabs(sd.beta - iota_spectrum(T, env, iota_depth - 1, tail).beta);
  std::vector<double> x(r.n.begin(), r.n.end());
  r.fit = geometric_fit(x, r.residual);
  return r;
}

DecayReport annealed_decay(const Transfer& T, const MarkovEnvironment& env, const GridFunction& f,
                           const GridFunction& g, const DecayOptions& opt) {
  require_match(T, env);
  if (!env.invariant()) throw ConfigError("annealed decay requires an invariant environment");
  if (opt.samples < 2 || opt.n_hi < opt.n_lo || opt.n_lo < 1) throw ConfigError("bad decay options");
  const std::size_t N = T.grid_size();
  const std::size_t nn = opt.n_hi;
  const std::size_t S = opt.samples;
  const auto k = static_cast<std::size_t>(env.size());
  std::size_t L = opt.strata_depth;
  if (L == 0)
    while (L < 12 && std::pow(static_cast<double>(k), static_cast<double>(L + 1)) * 4.0 <= static_cast<double>(S)) ++L;
  std::size_t K = 1;
  for (std::size_t j = 0; j < L; ++j) K *= k;
  if (S < 2 * K) throw ConfigError("need at least two samples per stratum");
  if (L > nn + opt.tail_length) throw ConfigError("strata deeper than the sampled path");
  std::vector<Word> cyl(K);
  std::vector<double> mass(K);
  std::vector<std::size_t> count(K, 0);
  for (std::size_t w = 0; w < K; ++w) {
    std::vector<int> l(L);
    std::size_t r = w;
    for (std::size_t j = L; j-- > 0;) {
      l[j] = static_cast<int>(r % k);
      r /= k;
    }
    cyl[w] = Word(l);
    mass[w] = env.cylinder_mass(cyl[w]);
  }
  for (std::size_t i = 0; i < S; ++i) ++count[i % K];

  std::vector<std::vector<double>> X(S, std::vector<double>(nn + 1, 0.0));
  std::vector<double> Y(S), Z(S);
  const GridFunction one = GridFunction::constant(N, 1.0);
  parallel_for(S, [&](std::size_t i) {
    auto rng = stream_for(opt.seed, i);
    const Word& c = cyl[i % K];
    Word omega;
    if (L == 0)
      omega = env.sample(rng, nn + opt.tail_length);
    else
      omega = c + env.extend(rng, c[L - 1], nn + opt.tail_length - L);
    const Word sigma = env.precede(rng, omega[0], opt.sigma_length);
    // r[n] = mu_{theta^n omega}, swept back with the transposed letters
    std::vector<std::vector<double>> r(nn + 1);
    r[nn] = quenched_conformal(T, Word(), omega.drop(nn), opt.tail_length, false).measure.weights();
    for (std::size_t n = nn; n >= 1; --n) {
      auto v = T.transpose_letter(omega[n - 1], r[n]);
      double s = 0.0;
      for (double x : v) s += x;
      for (double& x : v) x /= s;
      r[n - 1] = std::move(v);
    }
    auto dot = [&](const std::vector<double>& a, const GridFunction& b) {
      double s = 0.0;
      for (std::size_t j = 0; j < N; ++j) s += a[j] * b[j];
      return s;
    };
    Z[i] = dot(r[0], g);
    GridFunction G = g, U = one;
    for (std::size_t n = 1; n <= nn; ++n) {
      G = T.apply_letter(omega[n - 1], G);
      U = T.apply_letter(omega[n - 1], U);
      const double s = U.max();
      G = G * (1.0 / s);
      U = U * (1.0 / s);
      X[i][n] = dot(r[n], f * G) / dot(r[n], U);
    }
    Y[i] = T.normalized_quotient(sigma, omega.prefix(nn + opt.tail_length), f)[0];
  });

  std::vector<double> wt(S);
  for (std::size_t i = 0; i < S; ++i) wt[i] = mass[i % K] / static_cast<double>(count[i % K]);
  auto wmean = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < S; ++i) s += wt[i] * v[i];
    return s;
  };
  // stratified standard error of a weighted mean
  auto wse = [&](const std::vector<double>& v) {
    std::vector<double> m(K, 0.0), q(K, 0.0);
    for (std::size_t i = 0; i < S; ++i) m[i % K] += v[i] / static_cast<double>(count[i % K]);
    for (std::size_t i = 0; i < S; ++i) q[i % K] += (v[i] - m[i % K]) * (v[i] - m[i % K]);
    double var = 0.0;
    for (std::size_t w = 0; w < K; ++w) {
      const double nw = static_cast<double>(count[w]);
      var += mass[w] * mass[w] * (q[w] / (nw - 1.0)) / nw;
    }
    return std::sqrt(var);
  };

  DecayReport rep;
  rep.strata = K;
  rep.pi_tilde = wmean(Y);
  rep.pi_tilde_se = wse(Y);
  rep.mean_mu_g = wmean(Z);
  std::vector<double> fx, fy;
  for (std::size_t n = opt.n_lo; n <= nn; ++n) {
    std::vector<double> xs(S), psi(S);
    for (std::size_t i = 0; i < S; ++i) xs[i] = X[i][n];
    for (std::size_t i = 0; i < S; ++i) psi[i] = xs[i] - rep.mean_mu_g * Y[i] - rep.pi_tilde * Z[i];
    const double d = wmean(xs) - rep.pi_tilde * rep.mean_mu_g;
    const double se = wse(psi);
    rep.n.push_back(n);
    rep.lhs.push_back(wmean(xs));
    rep.discrepancy.push_back(d);
    rep.se.push_back(se);
    if (std::fabs(d) > 2.0 * se && std::fabs(d) > 1e-12) {
      fx.push_back(static_cast<double>(n));
      fy.push_back(std::fabs(d));
    }
  }
  rep.fit_points = fx.size();
  if (fx.size() >= 4) {
    rep.fit = geometric_fit(fx, fy);
    rep.fitted = true;
    rep.status = "fitted";
  } else {
    rep.status = "refused: fewer than 4 lengths where |discrepancy| > 2 SE";
  }
  return rep;
}

GridMeasure annealed_dual(const Transfer& T, const MarkovEnvironment& env, std::size_t n,
                          std::size_t node) {
  require_match(T, env);
  if (n == 0) throw ConfigError("annealed operator needs n >= 1");
  const int k = env.size();
  const std::size_t N = T.grid_size();
  std::vector<double> e(N, 0.0);
  e.at(node) = 1.0;
  std::vector<std::vector<double>> R(static_cast<std::size_t>(k));
  for (int b = 0; b < k; ++b) R[static_cast<std::size_t>(b)] = T.transpose_letter(b, e);
  auto renorm = [&] {
    double s = 0.0;
    for (const auto& r : R)
      for (double x : r) s += x;
    for (auto& r : R)
      for (double& x : r) x /= s;
  };
  renorm();
  for (std::size_t j = n - 1; j >= 1; --j) {
    std::vector<std::vector<double>> next(static_cast<std::size_t>(k));
    for (int b = 0; b < k; ++b) {
      std::vector<double> acc(N, 0.0);
      for (int c = 0; c < k; ++c) {
        const double q = env.Q(b, c);
        if (q == 0.0) continue;
        const auto& rc = R[static_cast<std::size_t>(c)];
        for (std::size_t x = 0; x < N; ++x) acc[x] += q * rc[x];
      }
      next[static_cast<std::size_t>(b)] = T.transpose_letter(b, acc);
    }
    R = std::move(next);
    renorm();
  }
  std::vector<double> nu(N, 0.0);
  for (int b = 0; b < k; ++b)
    for (std::size_t x = 0; x < N; ++x) nu[x] += env.initial(b) * R[static_cast<std::size_t>(b)][x];
  return GridMeasure(std::move(nu)).normalized();
}

Equidistribution equidistribution(const Transfer& T, const MarkovEnvironment& env,
                                  std::size_t node1, std::size_t node2,
                                  const std::vector<std::size_t>& n_values, std::size_t n_limit) {
  if (n_values.empty()) throw ConfigError("no n values");
  Equidistribution r;
  r.limit = annealed_dual(T, env, n_limit, node1);
  const std::size_t nmax = *std::max_element(n_values.begin(), n_values.end());
  const auto s1 = annealed_sequence(T, env, GridFunction::constant(T.grid_size(), 1.0), nmax);
  std::vector<double> fx, fy;
  for (std::size_t n : n_values) {
    const GridMeasure a = annealed_dual(T, env, n, node1);
    const GridMeasure b = annealed_dual(T, env, n, node2);
    const double w = wasserstein_euclid(a, b);
    r.n.push_back(n);
    r.w_pair.push_back(w);
    r.w_to_limit.push_back(wasserstein_euclid(a, r.limit));
    const ScaledFunction& A = s1[n - 1];
    r.pressure.push_back((A.log_scale + std::log(A.f.max())) / static_cast<double>(n));
    if (w > 1e-14) {
      fx.push_back(static_cast<double>(n));
      fy.push_back(w);
    }
  }
  if (fx.size() >= 3) r.fit = geometric_fit(fx, fy);
  return r;
}

}  // namespace semitherm
