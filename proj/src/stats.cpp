#include "semitherm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "semitherm/errors.hpp"
#include "semitherm/parallel.hpp"
#include "semitherm/rng.hpp"

namespace semitherm {

double MartingaleDecomposition::h_sup() const {
  double s = 0.0;
  for (const auto& h : h_n) s = std::max(s, h.sup_norm());
  return s;
}

MartingaleDecomposition build_decomposition(const Transfer& T, const Word& omega,
                                            const GridFunction& f, std::size_t n_max,
                                            std::size_t depth) {
  if (omega.size() < n_max + 1 + depth)
    throw ConfigError("environment word shorter than n_max + 1 + depth");
  if (depth == 0) throw ConfigError("conformal depth must be positive");
  const std::size_t N = T.grid_size();
  MartingaleDecomposition d;
  d.omega = omega;
  d.f = f;
  d.n_max = n_max;
  d.depth = depth;

  GridFunction g = GridFunction::constant(N, 1.0);
  d.weight.push_back(g);
  for (std::size_t k = 0; k <= n_max; ++k) {
    g = T.apply_letter(omega[k], g);
    g = g * (1.0 / g.max());
    d.weight.push_back(g);
  }
  d.nu.resize(n_max + 2);
  d.means.resize(n_max + 1);
  const GridMeasure delta0 = GridMeasure::dirac(N, 0);
  parallel_for(n_max + 2, [&](std::size_t k) {
    const Word v = omega.drop(k).prefix(depth);
    d.nu[k] = T.dual_quotient_with_weight(d.weight[k], v, delta0).normalized();
    if (k <= n_max) d.means[k] = T.quotient_with_weight(d.weight[k], v, f)[0];
  });

  d.h_n.push_back(GridFunction::constant(N, 0.0));
  for (std::size_t k = 0; k <= n_max; ++k) {
    d.f_n.push_back(f + (-d.means[k]));
    d.h_n.push_back(T.quotient_with_weight(d.weight[k], Word({omega[k]}), d.f_n[k] + d.h_n[k]));
  }

  // E f_j o T_j . f_k o T_k = nu_k(P_{[w]_j}^{w_{j+1..k}}(f_j) f_k)
  std::vector<double> diag(n_max), row(n_max, 0.0);
  parallel_for(n_max, [&](std::size_t j) {
    diag[j] = d.nu[j].integrate(d.f_n[j] * d.f_n[j]);
  });
  std::vector<std::vector<double>> C(n_max);
  parallel_for(n_max, [&](std::size_t j) {
    GridFunction q = d.f_n[j];
    C[j].assign(n_max, 0.0);
    for (std::size_t k = j + 1; k < n_max; ++k) {
      q = T.quotient_with_weight(d.weight[k - 1], Word({omega[k - 1]}), q);
      C[j][k] = d.nu[k].integrate(q * d.f_n[k]);
    }
  });
  d.s_sq.assign(n_max + 1, 0.0);
  d.sigma_sq.assign(n_max + 1, 0.0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::size_t k = n - 1;
    double cross = 0.0;
    for (std::size_t j = 0; j < k; ++j) cross += C[j][k];
    d.s_sq[n] = d.s_sq[n - 1] + diag[k] + 2.0 * cross;
    const GridFunction fh = d.f_n[k] + d.h_n[k];
    const double eu = d.nu[k].integrate(fh * fh) - d.nu[k + 1].integrate(d.h_n[k + 1] * d.h_n[k + 1]);
    d.sigma_sq[n] = d.sigma_sq[n - 1] + eu;
  }
  return d;
}

double telescoping_error(const Transfer& T, const MartingaleDecomposition& d,
                         const std::vector<double>& points) {
  const auto& sys = T.system();
  double worst = 0.0;
  for (double x0 : points) {
    std::vector<double> orbit{wrap(x0)};
    for (std::size_t k = 0; k < d.n_max; ++k) orbit.push_back(sys.map(d.omega[k]).apply(orbit.back()));
    double sum_u = 0.0, sum_f = 0.0;
    for (std::size_t n = 1; n <= d.n_max; ++n) {
      const std::size_t k = n - 1;
      const double fk = d.f_n[k](orbit[k]);
      sum_u += fk + d.h_n[k](orbit[k]) - d.h_n[k + 1](orbit[k + 1]);
      sum_f += fk;
      const double rhs = sum_f - d.h_n[n](orbit[n]);
      worst = std::max(worst, std::fabs(sum_u - rhs));
    }
  }
  return worst;
}

Orthogonality reverse_martingale_check(const Transfer& T, const MartingaleDecomposition& d,
                                       std::size_t n, const std::function<double(double)>& psi) {
  if (n >= d.n_max) throw ConfigError("orthogonality index must be below n_max");
  const std::size_t N = T.grid_size();
  const int a = d.omega[n];
  const GridFunction F = d.f_n[n] + d.h_n[n];
  const GridFunction& g = d.weight[n];
  const GridFunction Mg = T.apply_letter(a, g);
  const GridFunction ps = GridFunction::sample(N, psi);
  const GridMeasure& next = d.nu[n + 1];
  std::vector<double> q1(N), q0(N);
  for (std::size_t j = 0; j < N; ++j) {
    q0[j] = next[j] / Mg[j];
    q1[j] = q0[j] * ps[j];
  }
  const auto b1 = T.transpose_letter(a, q1);
  const auto b0 = T.transpose_letter(a, q0);
  const auto& map = T.system().map(a);
  double disc = 0.0, cont = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    const double w = d.nu[n][j] * F[j];
    if (b0[j] > 0.0) disc += w * b1[j] / b0[j];
    cont += w * psi(map.apply(F.node(j)));
  }
  const double rhs = next.integrate(d.h_n[n + 1] * ps);
  return {std::fabs(disc - rhs), std::fabs(cont - rhs)};
}

double ks_normal(std::vector<double> z) {
  std::sort(z.begin(), z.end());
  const double m = static_cast<double>(z.size());
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double F = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
    d = std::max({d, static_cast<double>(i + 1) / m - F, F - static_cast<double>(i) / m});
  }
  return d;
}

CltReport quenched_clt_check(const Transfer& T, const MartingaleDecomposition& d, std::size_t n,
                             std::size_t samples, std::uint64_t seed) {
  if (n == 0 || n > d.n_max) throw ConfigError("CLT length outside the decomposition");
  if (samples < 2) throw ConfigError("CLT needs at least two samples");
  CltReport r;
  r.samples = samples;
  r.s_sq = d.s_sq[n];
  if (!(r.s_sq > 1e-12 * static_cast<double>(n))) {
    r.status = "degenerate";
    r.ks = std::nan("");
    r.variance_ratio = std::nan("");
    return r;
  }
  const std::size_t N = T.grid_size();
  const auto& sys = T.system();
  std::vector<double> cdf(N);
  double c = 0.0;
  for (std::size_t j = 0; j < N; ++j) cdf[j] = (c += d.nu[n][j]);
  std::vector<double> S(samples);
  parallel_for(samples, [&](std::size_t i) {
    auto rng = stream_for(seed, i);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double u = U(rng) * c;
    const auto j = static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    double x = wrap((static_cast<double>(std::min(j, N - 1)) + U(rng) - 0.5) / static_cast<double>(N));
    double s = 0.0;
    std::vector<double> ys, ws;
    for (std::size_t k = n; k-- > 0;) {
      const int a = d.omega[k];
      const auto& map = sys.map(a);
      ys.clear();
      ws.clear();
      double tot = 0.0;
      for (int b = 0; b < map.branches(); ++b) {
        const double y = map.inverse(x, b);
        const double w = std::exp(sys.phi(a, y)) * d.weight[k](y);
        ys.push_back(y);
        ws.push_back(w);
        tot += w;
      }
      double pick = U(rng) * tot;
      std::size_t b = 0;
      while (b + 1 < ws.size() && pick >= ws[b]) pick -= ws[b++];
      x = ys[b];
      s += d.f_n[k](x);
    }
    S[i] = s;
  });
  std::vector<double> z(samples);
  const double sd = std::sqrt(r.s_sq);
  for (std::size_t i = 0; i < samples; ++i) z[i] = S[i] / sd;
  r.ks = ks_normal(z);
  r.variance_ratio = variance(S) / r.s_sq;
  r.status = "ok";
  return r;
}

CorrelationDecay quenched_correlation_decay(const Transfer& T, const Word& omega,
                                            const GridFunction& f, std::size_t n_lo,
                                            std::size_t n_hi, std::size_t depth) {
  if (n_hi < n_lo || omega.size() < n_hi + depth) throw ConfigError("bad correlation range");
  const std::size_t N = T.grid_size();
  CorrelationDecay r;
  r.mu_f = T.quotient_with_weight(GridFunction::constant(N, 1.0), omega.prefix(n_hi + depth), f)[0];
  GridFunction num = f, den = GridFunction::constant(N, 1.0);
  std::vector<double> fx, fy;
  for (std::size_t n = 1; n <= n_hi; ++n) {
    num = T.apply_letter(omega[n - 1], num);
    den = T.apply_letter(omega[n - 1], den);
    const double s = den.max();
    num = num * (1.0 / s);
    den = den * (1.0 / s);
    if (n < n_lo) continue;
    double e = 0.0;
    for (std::size_t j = 0; j < N; ++j) e = std::max(e, std::fabs(num[j] / den[j] - r.mu_f));
    r.n.push_back(n);
    r.error.push_back(e);
    if (e > 1e-13) {
      fx.push_back(static_cast<double>(n));
      fy.push_back(e);
    }
  }
  if (fx.size() >= 3) {
    r.fit = geometric_fit(fx, fy);
    r.fitted = true;
  }
  return r;
}

}  // namespace semitherm
