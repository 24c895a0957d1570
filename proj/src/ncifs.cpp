#include "semitherm/ncifs.hpp"

#include <algorithm>
#include <cmath>

#include "semitherm/errors.hpp"

namespace semitherm {

Ncifs::Ncifs(std::vector<std::vector<IfsMap>> systems, MarkovEnvironment env, std::size_t n)
    : systems_(std::move(systems)), env_(std::move(env)), n_(n) {
  if (systems_.empty()) throw ConfigError("IFS needs at least one system");
  if (static_cast<int>(systems_.size()) != env_.size())
    throw ConfigError("environment size must match the number of systems");
  if (n_ < 8) throw ConfigError("grid needs at least 8 nodes");
  for (const auto& sys : systems_) {
    if (sys.empty()) throw ConfigError("empty IFS system");
    std::vector<std::pair<double, double>> iv;
    for (const auto& m : sys) {
      if (!(m.r > 0.0 && m.r < 1.0)) throw ConfigError("IFS ratio must lie in (0,1)");
      if (!(std::fabs(m.bend) < 1.0)) throw ConfigError("IFS bend must lie in (-1,1)");
      if (m.r * (1.0 + std::fabs(m.bend)) >= 1.0) throw ConfigError("IFS map is not a contraction");
      if (m.b < -1e-15 || m.b + m.r > 1.0 + 1e-15) throw ConfigError("IFS map leaves [0,1]");
      iv.emplace_back(m.b, m.b + m.r);
    }
    // open set condition: images of (0,1) pairwise disjoint
    std::sort(iv.begin(), iv.end());
    for (std::size_t j = 1; j < iv.size(); ++j)
      if (iv[j].first < iv[j - 1].second - 1e-15) throw ConfigError("open set condition fails");
  }
}

bool Ncifs::all_affine() const {
  for (const auto& s : systems_)
    for (const auto& m : s)
      if (!m.affine()) return false;
  return true;
}

double Ncifs::eta_minus() const {
  double e = 1.0;
  for (const auto& s : systems_)
    for (const auto& m : s) e = std::min(e, m.r * (1.0 - std::fabs(m.bend)));
  return e;
}

double Ncifs::eta_plus() const {
  double e = 0.0;
  for (const auto& s : systems_)
    for (const auto& m : s) e = std::max(e, m.r * (1.0 + std::fabs(m.bend)));
  return e;
}

int Ncifs::min_branches() const {
  std::size_t k = systems_.front().size();
  for (const auto& s : systems_) k = std::min(k, s.size());
  return static_cast<int>(k);
}

double Ncifs::eval(const GridFunction& f, double x) const {
  const double s = std::clamp(x, 0.0, 1.0) * static_cast<double>(n_ - 1);
  auto i = static_cast<std::size_t>(std::floor(s));
  if (i >= n_ - 1) i = n_ - 2;
  const double t = s - static_cast<double>(i);
  return (1.0 - t) * f[i] + t * f[i + 1];
}

GridFunction Ncifs::delta_apply(int i, double delta, const GridFunction& f) const {
  if (f.size() != n_) throw ConfigError("grid size mismatch");
  const auto& sys = system(i);
  std::vector<double> out(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    const double x = node(j);
    double s = 0.0;
    for (const auto& m : sys) {
      const double d = std::fabs(m.derivative(x));
      s += std::pow(d, delta) * eval(f, m.apply(x));
    }
    out[j] = s;
  }
  return GridFunction(std::move(out));
}

double annealed_log_norm(const Ncifs& ifs, double delta, std::size_t n, double* spread) {
  if (n == 0) throw ConfigError("annealed pressure needs n >= 1");
  const int k = ifs.size();
  const auto& env = ifs.environment();
  const GridFunction one = GridFunction::constant(ifs.grid_size(), 1.0);
  std::vector<GridFunction> V(static_cast<std::size_t>(k));
  double log_scale = 0.0;
  auto renorm = [&] {
    double s = 0.0;
    for (const auto& v : V) s = std::max(s, v.sup_norm());
    if (!(s > 0.0)) throw NumericalGuard("annealed operator collapsed to zero");
    for (auto& v : V) v = v * (1.0 / s);
    log_scale += std::log(s);
  };
  for (int c = 0; c < k; ++c) V[static_cast<std::size_t>(c)] = ifs.delta_apply(c, delta, one);
  renorm();
  for (std::size_t j = n - 1; j >= 1; --j) {
    std::vector<GridFunction> W(static_cast<std::size_t>(k));
    for (int b = 0; b < k; ++b) {
      GridFunction acc = GridFunction::constant(ifs.grid_size(), 0.0);
      for (int c = 0; c < k; ++c)
        if (env.Q(b, c) > 0.0) acc = acc + V[static_cast<std::size_t>(c)] * env.Q(b, c);
      W[static_cast<std::size_t>(b)] = ifs.delta_apply(b, delta, acc);
    }
    V = std::move(W);
    renorm();
  }
  GridFunction A = GridFunction::constant(ifs.grid_size(), 0.0);
  for (int b = 0; b < k; ++b) A = A + V[static_cast<std::size_t>(b)] * env.initial(b);
  if (spread) *spread = std::log(A.max() / A.min());
  return log_scale + std::log(A.max());
}

PressureEstimate annealed_pressure(const Ncifs& ifs, double delta, std::size_t n_max) {
  if (n_max < 3) throw ConfigError("pressure needs n_max >= 3");
  PressureEstimate p;
  double spread = 0.0;
  const double a = annealed_log_norm(ifs, delta, n_max, &spread);
  const double b = annealed_log_norm(ifs, delta, n_max - 1);
  const double c = annealed_log_norm(ifs, delta, n_max - 2);
  p.P = a - b;
  p.stability = std::fabs((a - b) - (b - c));
  p.spread = spread;
  p.n = n_max;
  return p;
}

BowenRoot bowen_root(const Ncifs& ifs, double tol, std::size_t n_max) {
  const double p0 = annealed_pressure(ifs, 0.0, n_max).P;
  if (!(p0 > 1e-12)) throw NumericalGuard("degenerate system, dimension not bracketed: P(0) <= 0");
  BowenRoot r;
  r.lo = 0.0;
  r.hi = 1.0;
  while (annealed_pressure(ifs, r.hi, n_max).P > 0.0) {
    r.lo = r.hi;
    r.hi *= 2.0;
    if (r.hi > 64.0) throw NumericalGuard("pressure root not bracketed below 64; raise delta_max");
  }
  while (r.hi - r.lo > tol) {
    const double mid = 0.5 * (r.lo + r.hi);
    if (annealed_pressure(ifs, mid, n_max).P > 0.0)
      r.lo = mid;
    else
      r.hi = mid;
    ++r.iterations;
  }
  r.delta0 = 0.5 * (r.lo + r.hi);
  return r;
}

double quenched_pressure(const Ncifs& ifs, const Word& omega, double delta) {
  if (omega.empty()) throw ConfigError("quenched pressure needs a nonempty word");
  GridFunction z = GridFunction::constant(ifs.grid_size(), 1.0);
  double log_scale = 0.0;
  for (std::size_t j = omega.size(); j-- > 0;) {
    z = ifs.delta_apply(omega[j], delta, z);
    const double s = z.sup_norm();
    z = z * (1.0 / s);
    log_scale += std::log(s);
  }
  return (log_scale + std::log(z.max())) / static_cast<double>(omega.size());
}

}  // namespace semitherm
