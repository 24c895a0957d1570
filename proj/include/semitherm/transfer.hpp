#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstddef>
#include <vector>

#include "semitherm/dynamics.hpp"
#include "semitherm/grid.hpp"
#include "semitherm/word.hpp"

namespace semitherm {

// value = exp(log_scale) * f, with f kept at sup norm 1.
struct ScaledFunction {
  GridFunction f;
  double log_scale = 0.0;
};

struct HolderSeminorms {
  double sup_norm = 0.0;
  double oscillation = 0.0;
  double D_alpha = 0.0;
  double D_alpha_loc = 0.0;
  double D_bar = 0.0;
};

// Ruelle operators of a system discretised on the grid j/N.
//
// L_i f(x_j) = sum_b exp(phi_i(y_b)) f(y_b) over the exact preimages y_b,
// with f read by linear interpolation. Each L_i is therefore a sparse
// matrix M_i with 2 m_i entries per row, and L_v = M_{i_n} ... M_{i_1}
// holds exactly on the grid. The dual action is the transpose, which is
// the mean-preserving two-node binning of pushed atoms.
// linear: positive hat-function stencil, O(h^2); the only scheme under which
// dual measures stay nonnegative. cubic: 4-point Lagrange, O(h^4), for
// function-level accuracy; its stencil has negative weights.
enum class Scheme { linear, cubic };

class Transfer {
 public:
  explicit Transfer(ExpandingSystem sys, std::size_t n = kDefaultGridSize,
                    Scheme scheme = Scheme::linear);

  const ExpandingSystem& system() const { return sys_; }
  std::size_t grid_size() const { return n_; }
  Scheme scheme() const { return scheme_; }
  int alphabet_size() const { return sys_.alphabet_size(); }

  GridFunction apply_letter(int i, const GridFunction& f) const;
  // letters left to right: L_{i_1...i_n} = L_{i_n} o ... o L_{i_1}
  GridFunction apply_word(const Word& v, const GridFunction& f) const;
  // Same, renormalised after every letter.
  ScaledFunction apply_word_scaled(const Word& v, const GridFunction& f) const;
  ScaledFunction apply_word_scaled(const Word& v, const ScaledFunction& f) const;
  // L_u(1) up to a positive factor (sup norm 1); the empty word gives 1.
  GridFunction one_image(const Word& u) const;

  // P_u^v(f) = L_v(f L_u(1)) / L_{uv}(1)
  GridFunction normalized_quotient(const Word& u, const Word& v, const GridFunction& f) const;
  // Same with L_u(1) supplied (any positive multiple).
  GridFunction quotient_with_weight(const GridFunction& g, const Word& v,
                                    const GridFunction& f) const;

  // Row vector times M_i, i.e. M_i^T mu.
  std::vector<double> transpose_letter(int i, const std::vector<double>& mu) const;
  // (P_u^v)^* mu, exact transpose of normalized_quotient.
  GridMeasure dual_quotient(const Word& u, const Word& v, const GridMeasure& mu) const;
  GridMeasure dual_quotient_with_weight(const GridFunction& g, const Word& v,
                                        const GridMeasure& mu) const;
  // Single letter dual with g = L_u(1) (projective); one Markov step.
  GridMeasure dual_letter(const GridFunction& g, int i, const GridMeasure& mu) const;

  // max L_v(1) / min L_v(1) over the grid.
  double comparability_ratio(const Word& v) const;

  Eigen::SparseMatrix<double, Eigen::RowMajor> sparse_matrix(int i) const;
  Eigen::MatrixXd dense_matrix(int i) const;

 private:
  struct Entry {
    std::size_t left;
    std::size_t right;
    double wl;
    double wr;
  };
  // stencil_[i][j * m_i + b]
  const std::vector<Entry>& stencil(int i) const { return stencil_[static_cast<std::size_t>(i)]; }

  ExpandingSystem sys_;
  std::size_t n_;
  Scheme scheme_;
  std::vector<std::vector<Entry>> stencil_;
};

// Seminorms over grid pairs; lower bounds of the true quantities. All
// pairs for N <= 512, every offset with strided base points above.
HolderSeminorms holder_seminorms(const MetricConstants& mc, const GridFunction& f);

}  // namespace semitherm
