#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "semitherm/word.hpp"

namespace semitherm {

// Arc distance on R/Z.
double circle_distance(double x, double y);
// Reduce to [0,1).
double wrap(double x);

// Full-branch expanding circle map with analytic inverse branches.
//
// The linear family is x -> m x mod 1. The smooth family is
// T = m * h_{-a}(x) mod 1 where h_a is the boundary action of the disc
// automorphism z -> (z+a)/(1+az); its inverse branches are
// g_b(x) = h_a((x+b)/m), so nothing is inverted numerically.
class CircleMap {
 public:
  static CircleMap linear(int branches);
  static CircleMap mobius(int branches, double a);

  int branches() const { return branches_; }
  bool is_linear() const { return mobius_ == 0.0; }
  double mobius_parameter() const { return mobius_; }

  double apply(double x) const;
  // b-th inverse branch, b in [0, branches); increasing in b.
  double inverse(double x, int b) const;
  double derivative(double x) const;
  double inverse_derivative(double x, int b) const;

  // sup |g_b'|, the contraction rate of the inverse branches.
  double contraction() const;
  // inf |T'| and sup |T'|.
  double min_slope() const;
  double max_slope() const;
  // Smallest circle distance between two preimages of one point.
  double min_preimage_gap() const;

 private:
  CircleMap(int branches, double a) : branches_(branches), mobius_(a) {}
  int branches_;
  double mobius_;
};

struct Potential {
  std::function<double(double)> fn;
  double holder_alpha = 1.0;
  double holder_const = 0.0;
  std::string label;

  static Potential zero();
  double operator()(double x) const { return fn(x); }
};

struct MetricConstants {
  double C_phi = 0.0;
  double Delta = 1.0;
  double alpha = 1.0;
  double a = 0.0;
  double lambda = 0.5;

  // min{1, Delta d(x,y)^alpha}
  double dstar(double x, double y) const;
  double dstar_of_distance(double d) const;
  // Radius below which dstar < 1.
  double truncation_radius() const;
};

// Generators T_i with potentials phi_i sharing the Ruelle-expansion
// constants (a, lambda). Immutable after construction.
class ExpandingSystem {
 public:
  struct Options {
    // Spot-check the declared Hölder constants on random pairs.
    bool check_holder = true;
  };

  ExpandingSystem(std::vector<CircleMap> maps, std::vector<Potential> potentials, double a,
                  double lambda, Options options);
  ExpandingSystem(std::vector<CircleMap> maps, std::vector<Potential> potentials, double a,
                  double lambda)
      : ExpandingSystem(std::move(maps), std::move(potentials), a, lambda, Options{}) {}

  int alphabet_size() const { return static_cast<int>(maps_.size()); }
  const CircleMap& map(int i) const { return maps_.at(static_cast<std::size_t>(i)); }
  const Potential& potential(int i) const { return potentials_.at(static_cast<std::size_t>(i)); }
  double phi(int i, double x) const { return potentials_[static_cast<std::size_t>(i)].fn(x); }

  double a() const { return a_; }
  double lambda() const { return lambda_; }
  // Common Hölder exponent (smallest declared).
  double alpha() const { return alpha_; }
  int max_branches() const;
  bool zero_potential() const { return zero_potential_; }
  // All generators are linear maps.
  bool all_linear() const;
  // sup over generators of sup |T_i'|; finite for every fixture.
  double max_expansion() const;

  MetricConstants metric_constants() const;

  // Number of preimages of a point under T_v.
  double preimage_count(const Word& v) const;

 private:
  void validate(const Options& options) const;

  std::vector<CircleMap> maps_;
  std::vector<Potential> potentials_;
  double a_;
  double lambda_;
  double alpha_ = 1.0;
  bool zero_potential_ = true;
};

struct Preimage {
  double point;
  // phi_v(y) = phi_{i1}(y) + phi_{i2}(T_{i1} y) + ...
  double phi_sum;
};

inline constexpr std::size_t kDefaultBranchCap = std::size_t{1} << 20;

// T_v(x) = T_{i_n}(...T_{i_1}(x)): letters applied left to right.
double apply_word_map(const ExpandingSystem& sys, const Word& v, double x);

// All y with T_v(y) = x, lexicographic in the branch indices with the
// first letter's branch most significant. Throws NumericalGuard when the
// count exceeds `cap`; compose operators letter by letter instead.
std::vector<Preimage> inverse_branches(const ExpandingSystem& sys, const Word& v, double x,
                                       std::size_t cap = kDefaultBranchCap);

// max{ d(x,y), d(T_{[v]_j} x, T_{[v]_j} y) : 1 <= j < |v| }
double dynamical_distance(const ExpandingSystem& sys, const Word& v, double x, double y);

}  // namespace semitherm
