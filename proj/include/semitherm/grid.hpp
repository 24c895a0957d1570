#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace semitherm {

inline constexpr std::size_t kDefaultGridSize = 1024;

// Hat-function location of a circle point on the grid j/N: left node,
// right node and the weight of the right node.
struct HatSplit {
  std::size_t left;
  std::size_t right;
  double t;
};
HatSplit hat_split(double x, std::size_t n);

// Samples at j/N, j = 0..N-1, with periodic piecewise-linear interpolation.
// For an alpha-Hölder f with constant D the interpolation error is at most
// D (1/(2N))^alpha.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(std::vector<double> values) : v_(std::move(values)) {}

  static GridFunction constant(std::size_t n, double c);
  static GridFunction sample(std::size_t n, const std::function<double(double)>& f);

  std::size_t size() const { return v_.size(); }
  double node(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(v_.size()); }
  double operator[](std::size_t j) const { return v_[j]; }
  double operator()(double x) const;
  const std::vector<double>& values() const { return v_; }

  double sup_norm() const;
  double min() const;
  double max() const;
  double oscillation() const { return max() - min(); }

  GridFunction operator+(const GridFunction& o) const;
  GridFunction operator-(const GridFunction& o) const;
  // pointwise product
  GridFunction operator*(const GridFunction& o) const;
  GridFunction operator/(const GridFunction& o) const;
  GridFunction operator*(double c) const;
  GridFunction operator+(double c) const;

 private:
  std::vector<double> v_;
};

// Nonnegative weights on the grid nodes.
class GridMeasure {
 public:
  GridMeasure() = default;
  explicit GridMeasure(std::vector<double> weights) : w_(std::move(weights)) {}

  static GridMeasure dirac(std::size_t n, std::size_t node);
  static GridMeasure uniform(std::size_t n);
  // Atoms at arbitrary points, split between the two neighbouring nodes
  // (mean preserving).
  static GridMeasure binned(std::size_t n, const std::vector<double>& points,
                            const std::vector<double>& masses);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t j) const { return w_[j]; }
  const std::vector<double>& weights() const { return w_; }

  double mass() const;
  double integrate(const GridFunction& f) const;
  double integrate(const std::function<double(double)>& f) const;
  GridMeasure normalized() const;
  // Throws ConfigError unless weights are nonnegative with unit mass.
  void require_probability(double tol = 1e-9) const;

 private:
  std::vector<double> w_;
};

}  // namespace semitherm
