#include "semitherm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "semitherm/errors.hpp"

namespace semitherm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Boundary action of z -> (z+a)/(1+az) in turns.
double mobius_turn(double t, double a) {
  const double c = (1.0 + a) / (1.0 - a);
  const double half = 0.5 * kTwoPi * t;
  const double r = 2.0 * std::atan2(c * std::sin(half), std::cos(half));
  return wrap(r / kTwoPi);
}

double mobius_turn_derivative(double t, double a) {
  const double th = kTwoPi * t;
  return (1.0 - a * a) / (1.0 - 2.0 * a * std::cos(th) + a * a);
}

}  // namespace

double wrap(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

double circle_distance(double x, double y) {
  const double d = std::fabs(wrap(x) - wrap(y));
  return std::min(d, 1.0 - d);
}

CircleMap CircleMap::linear(int branches) {
  if (branches < 2) throw ConfigError("circle map needs at least 2 branches");
  return CircleMap(branches, 0.0);
}

CircleMap CircleMap::mobius(int branches, double a) {
  if (branches < 2) throw ConfigError("circle map needs at least 2 branches");
  if (!(std::fabs(a) < 1.0)) throw ConfigError("mobius parameter must lie in (-1,1)");
  return CircleMap(branches, a);
}

double CircleMap::apply(double x) const {
  const double m = branches_;
  if (is_linear()) return wrap(m * wrap(x));
  return wrap(m * mobius_turn(wrap(x), -mobius_));
}

double CircleMap::inverse(double x, int b) const {
  const double t = (wrap(x) + b) / branches_;
  if (is_linear()) return t;
  return mobius_turn(t, mobius_);
}

double CircleMap::derivative(double x) const {
  if (is_linear()) return branches_;
  return branches_ * mobius_turn_derivative(wrap(x), -mobius_);
}

double CircleMap::inverse_derivative(double x, int b) const {
  if (is_linear()) return 1.0 / branches_;
  const double t = (wrap(x) + b) / branches_;
  return mobius_turn_derivative(t, mobius_) / branches_;
}

double CircleMap::contraction() const {
  const double s = std::fabs(mobius_);
  return (1.0 + s) / (1.0 - s) / branches_;
}

double CircleMap::min_slope() const {
  const double s = std::fabs(mobius_);
  return branches_ * (1.0 - s) / (1.0 + s);
}

double CircleMap::max_slope() const {
  const double s = std::fabs(mobius_);
  return branches_ * (1.0 + s) / (1.0 - s);
}

double CircleMap::min_preimage_gap() const {
  const double s = std::fabs(mobius_);
  return (1.0 - s) / (1.0 + s) / branches_;
}

Potential Potential::zero() {
  Potential p;
  p.fn = [](double) { return 0.0; };
  p.holder_alpha = 1.0;
  p.holder_const = 0.0;
  p.label = "zero";
  return p;
}

double MetricConstants::dstar_of_distance(double d) const {
  return std::min(1.0, Delta * std::pow(d, alpha));
}

double MetricConstants::dstar(double x, double y) const {
  return dstar_of_distance(circle_distance(x, y));
}

double MetricConstants::truncation_radius() const { return std::pow(Delta, -1.0 / alpha); }

ExpandingSystem::ExpandingSystem(std::vector<CircleMap> maps, std::vector<Potential> potentials,
                                 double a, double lambda, Options options)
    : maps_(std::move(maps)), potentials_(std::move(potentials)), a_(a), lambda_(lambda) {
  if (maps_.empty()) throw ConfigError("system needs at least one generator");
  if (maps_.size() != potentials_.size())
    throw ConfigError("one potential per generator required");
  if (maps_.size() > 9) throw ConfigError("at most 9 generators supported");
  alpha_ = 1.0;
  for (const auto& p : potentials_) {
    if (!p.fn) throw ConfigError("potential without a callable");
    if (!(p.holder_alpha > 0.0 && p.holder_alpha <= 1.0))
      throw ConfigError("holder exponent must lie in (0,1]");
    if (p.holder_const < 0.0) throw ConfigError("holder constant must be nonnegative");
    alpha_ = std::min(alpha_, p.holder_alpha);
  }
  zero_potential_ = true;
  for (const auto& p : potentials_) {
    if (p.holder_const != 0.0) zero_potential_ = false;
    for (double x : {0.0, 0.25, 0.5, 0.75})
      if (p.fn(x) != 0.0) zero_potential_ = false;
  }
  validate(options);
}

void ExpandingSystem::validate(const Options& options) const {
  if (!(lambda_ > 0.0 && lambda_ < 1.0)) throw ConfigError("lambda must lie in (0,1)");
  if (!(a_ > 0.0)) throw ConfigError("a must be positive");
  for (const auto& m : maps_) {
    if (m.contraction() > lambda_ * (1.0 + 1e-12))
      throw ConfigError("inverse branches contract by more than lambda allows");
    if (!(a_ < 0.5 * m.min_preimage_gap()))
      throw ConfigError("a too large: inverse branches must stay more than a apart");
  }

  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // summability and finiteness on a coarse grid
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    for (int j = 0; j < 256; ++j) {
      const double x = j / 256.0;
      double s = 0.0;
      for (int b = 0; b < maps_[i].branches(); ++b)
        s += std::exp(potentials_[i].fn(maps_[i].inverse(x, b)));
      if (!std::isfinite(s) || s <= 0.0) throw ConfigError("potential is not summable");
    }
  }

  // sampled Ruelle expansion: matched lifts contract by lambda
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    const auto& T = maps_[i];
    for (int t = 0; t < 200; ++t) {
      const double x = unif(rng);
      const double y = wrap(x + a_ * unif(rng));
      const double dxy = circle_distance(x, y);
      for (int b = 0; b < T.branches(); ++b) {
        const double xt = T.inverse(x, b);
        double best = 1.0;
        for (int c = 0; c < T.branches(); ++c)
          best = std::min(best, circle_distance(xt, T.inverse(y, c)));
        if (best > lambda_ * dxy + 1e-12)
          throw ConfigError("sampled lift violates the lambda contraction");
      }
    }
  }

  if (!options.check_holder) return;
  for (const auto& p : potentials_) {
    for (int t = 0; t < 2000; ++t) {
      const double x = unif(rng);
      const double y = unif(rng);
      const double d = circle_distance(x, y);
      const double bound = p.holder_const * std::pow(d, p.holder_alpha);
      if (std::fabs(p.fn(x) - p.fn(y)) > bound * (1.0 + 1e-9) + 1e-12)
        throw ConfigError("declared holder constant is too small for potential '" + p.label +
                          "'");
    }
  }
}

int ExpandingSystem::max_branches() const {
  int m = 0;
  for (const auto& t : maps_) m = std::max(m, t.branches());
  return m;
}

bool ExpandingSystem::all_linear() const {
  return std::all_of(maps_.begin(), maps_.end(), [](const CircleMap& m) { return m.is_linear(); });
}

double ExpandingSystem::max_expansion() const {
  double s = 0.0;
  for (const auto& t : maps_) s = std::max(s, t.max_slope());
  return s;
}

MetricConstants ExpandingSystem::metric_constants() const {
  MetricConstants mc;
  mc.alpha = alpha_;
  mc.a = a_;
  mc.lambda = lambda_;
  double dmax = 0.0;
  for (const auto& p : potentials_) dmax = std::max(dmax, p.holder_const);
  mc.C_phi = dmax / (1.0 - std::pow(lambda_, alpha_));
  mc.Delta = std::max(4.0 * mc.C_phi, std::pow(a_, -alpha_));
  return mc;
}

double ExpandingSystem::preimage_count(const Word& v) const {
  double c = 1.0;
  for (int l : v.letters()) c *= map(l).branches();
  return c;
}

double apply_word_map(const ExpandingSystem& sys, const Word& v, double x) {
  double y = wrap(x);
  for (int l : v.letters()) y = sys.map(l).apply(y);
  return y;
}

std::vector<Preimage> inverse_branches(const ExpandingSystem& sys, const Word& v, double x,
                                       std::size_t cap) {
  const std::size_t n = v.size();
  std::vector<std::size_t> stride(n + 1, 1);
  // stride[j] is the weight of the branch of letter j (first letter most significant)
  std::size_t total = 1;
  for (std::size_t j = n; j-- > 0;) {
    stride[j] = total;
    const auto m = static_cast<std::size_t>(sys.map(v[j]).branches());
    if (total > cap / m) throw NumericalGuard("branch count exceeds cap; compose operators instead");
    total *= m;
  }
  std::vector<Preimage> out(total);
  if (n == 0) {
    out[0] = {wrap(x), 0.0};
    return out;
  }
  // walk backwards from the last letter
  auto rec = [&](auto&& self, std::size_t j, double y, double phi, std::size_t index) -> void {
    const int l = v[j];
    const auto& T = sys.map(l);
    for (int b = 0; b < T.branches(); ++b) {
      const double z = T.inverse(y, b);
      const double s = phi + sys.phi(l, z);
      const std::size_t idx = index + static_cast<std::size_t>(b) * stride[j];
      if (j == 0)
        out[idx] = {z, s};
      else
        self(self, j - 1, z, s, idx);
    }
  };
  rec(rec, n - 1, wrap(x), 0.0, 0);
  return out;
}

double dynamical_distance(const ExpandingSystem& sys, const Word& v, double x, double y) {
  double d = circle_distance(x, y);
  double px = wrap(x), py = wrap(y);
  for (std::size_t j = 0; j + 1 < v.size(); ++j) {
    px = sys.map(v[j]).apply(px);
    py = sys.map(v[j]).apply(py);
    d = std::max(d, circle_distance(px, py));
  }
  return d;
}

}  // namespace semitherm
