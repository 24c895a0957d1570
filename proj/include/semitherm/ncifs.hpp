#pragma once

#include <cstddef>
#include <vector>

#include "semitherm/environment.hpp"
#include "semitherm/grid.hpp"
#include "semitherm/word.hpp"

namespace semitherm {

// Contraction of [0,1]: x -> b + r s(x) with s(x) = x + bend x (1-x).
// bend = 0 is the affine map; |bend| < 1 keeps it a diffeomorphism onto
// [b, b+r].
struct IfsMap {
  double r = 0.5;
  double b = 0.0;
  double bend = 0.0;

  double apply(double x) const { return b + r * (x + bend * x * (1.0 - x)); }
  double derivative(double x) const { return r * (1.0 + bend * (1.0 - 2.0 * x)); }
  bool affine() const { return bend == 0.0; }
};

// Non-autonomous conformal IFS on [0,1] driven by a Markov environment.
// Grid functions live on the nodes j/(N-1).
class Ncifs {
 public:
  Ncifs(std::vector<std::vector<IfsMap>> systems, MarkovEnvironment env,
        std::size_t n = kDefaultGridSize);

  int size() const { return static_cast<int>(systems_.size()); }
  const std::vector<IfsMap>& system(int i) const { return systems_.at(static_cast<std::size_t>(i)); }
  const MarkovEnvironment& environment() const { return env_; }
  std::size_t grid_size() const { return n_; }
  bool all_affine() const;
  // bounds on |D phi| over all maps: eta_- <= |phi'| <= eta_+
  double eta_minus() const;
  double eta_plus() const;
  int min_branches() const;

  double node(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(n_ - 1); }
  // linear interpolation on [0,1]
  double eval(const GridFunction& f, double x) const;

  // L^delta_i f = sum_j |phi_ij'|^delta f o phi_ij
  GridFunction delta_apply(int i, double delta, const GridFunction& f) const;

 private:
  std::vector<std::vector<IfsMap>> systems_;
  MarkovEnvironment env_;
  std::size_t n_;
};

struct PressureEstimate {
  double P = 0.0;
  // |slope(n) - slope(n-1)|
  double stability = 0.0;
  // log(sup A_n(1) / inf A_n(1))
  double spread = 0.0;
  std::size_t n = 0;
};

// log sup A^delta_n(1) by the backward state recursion
// V_n[c] = L_c 1, V_j[b] = L_b(sum_c Q_bc V_{j+1}[c]), A_n = sum_b init_b V_1[b].
double annealed_log_norm(const Ncifs& ifs, double delta, std::size_t n, double* spread = nullptr);
// Growth rate from slope differencing at n_max.
PressureEstimate annealed_pressure(const Ncifs& ifs, double delta, std::size_t n_max = 40);

struct BowenRoot {
  double delta0 = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
};
BowenRoot bowen_root(const Ncifs& ifs, double tol = 1e-10, std::size_t n_max = 40);

// (1/n) log sup L^delta_{omega_1...omega_n}(1), n = |omega|.
double quenched_pressure(const Ncifs& ifs, const Word& omega, double delta);

}  // namespace semitherm
