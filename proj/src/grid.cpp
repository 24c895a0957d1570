#include "semitherm/grid.hpp"

#include <algorithm>
#include <cmath>

#include "semitherm/errors.hpp"

namespace semitherm {

HatSplit hat_split(double x, std::size_t n) {
  const double s = (x - std::floor(x)) * static_cast<double>(n);
  double fl = std::floor(s);
  double t = s - fl;
  auto left = static_cast<std::size_t>(fl);
  if (left >= n) {
    left = 0;
    t = 0.0;
  }
  return {left, left + 1 == n ? 0 : left + 1, t};
}

GridFunction GridFunction::constant(std::size_t n, double c) {
  return GridFunction(std::vector<double>(n, c));
}

GridFunction GridFunction::sample(std::size_t n, const std::function<double(double)>& f) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f(static_cast<double>(j) / static_cast<double>(n));
  return GridFunction(std::move(v));
}

double GridFunction::operator()(double x) const {
  const auto h = hat_split(x, v_.size());
  return (1.0 - h.t) * v_[h.left] + h.t * v_[h.right];
}

double GridFunction::sup_norm() const {
  double s = 0.0;
  for (double x : v_) s = std::max(s, std::fabs(x));
  return s;
}

double GridFunction::min() const { return *std::min_element(v_.begin(), v_.end()); }
double GridFunction::max() const { return *std::max_element(v_.begin(), v_.end()); }

namespace {
template <class Op>
GridFunction zip(const std::vector<double>& a, const std::vector<double>& b, Op op) {
  if (a.size() != b.size()) throw ConfigError("grid size mismatch");
  std::vector<double> r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = op(a[j], b[j]);
  return GridFunction(std::move(r));
}
}  // namespace

GridFunction GridFunction::operator+(const GridFunction& o) const {
  return zip(v_, o.v_, [](double x, double y) { return x + y; });
}
GridFunction GridFunction::operator-(const GridFunction& o) const {
  return zip(v_, o.v_, [](double x, double y) { return x - y; });
}
GridFunction GridFunction::operator*(const GridFunction& o) const {
  return zip(v_, o.v_, [](double x, double y) { return x * y; });
}
GridFunction GridFunction::operator/(const GridFunction& o) const {
  return zip(v_, o.v_, [](double x, double y) { return x / y; });
}
GridFunction GridFunction::operator*(double c) const {
  std::vector<double> r(v_);
  for (double& x : r) x *= c;
  return GridFunction(std::move(r));
}
GridFunction GridFunction::operator+(double c) const {
  std::vector<double> r(v_);
  for (double& x : r) x += c;
  return GridFunction(std::move(r));
}

GridMeasure GridMeasure::dirac(std::size_t n, std::size_t node) {
  std::vector<double> w(n, 0.0);
  w.at(node) = 1.0;
  return GridMeasure(std::move(w));
}

GridMeasure GridMeasure::uniform(std::size_t n) {
  return GridMeasure(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

GridMeasure GridMeasure::binned(std::size_t n, const std::vector<double>& points,
                                const std::vector<double>& masses) {
  std::vector<double> w(n, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto h = hat_split(points[i], n);
    w[h.left] += (1.0 - h.t) * masses[i];
    w[h.right] += h.t * masses[i];
  }
  return GridMeasure(std::move(w));
}

double GridMeasure::mass() const {
  double s = 0.0;
  for (double x : w_) s += x;
  return s;
}

double GridMeasure::integrate(const GridFunction& f) const {
  if (f.size() != w_.size()) throw ConfigError("grid size mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < w_.size(); ++j) s += w_[j] * f[j];
  return s;
}

double GridMeasure::integrate(const std::function<double(double)>& f) const {
  double s = 0.0;
  const double n = static_cast<double>(w_.size());
  for (std::size_t j = 0; j < w_.size(); ++j)
    if (w_[j] != 0.0) s += w_[j] * f(static_cast<double>(j) / n);
  return s;
}

GridMeasure GridMeasure::normalized() const {
  const double m = mass();
  if (!(m > 0.0)) throw NumericalGuard("cannot normalise a measure of zero mass");
  std::vector<double> w(w_);
  for (double& x : w) x /= m;
  return GridMeasure(std::move(w));
}

void GridMeasure::require_probability(double tol) const {
  for (double x : w_)
    if (x < -tol) throw ConfigError("measure has negative weights");
  if (std::fabs(mass() - 1.0) > tol) throw ConfigError("measure is not a probability");
}

}  // namespace semitherm
