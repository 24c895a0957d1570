#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "semitherm/environment.hpp"
#include "semitherm/fit.hpp"
#include "semitherm/grid.hpp"
#include "semitherm/transfer.hpp"
#include "semitherm/word.hpp"

namespace semitherm {

// A_n(f) for n = 1..n_max by the state recursion
// H_1[b] = init_b L_b f, H_{j+1}[c] = L_c(sum_b Q_bc H_j[b]), A_j = sum_b H_j[b].
// Entry n-1 holds A_n(f) as (function, log scale).
std::vector<ScaledFunction> annealed_sequence(const Transfer& T, const MarkovEnvironment& env,
                                              const GridFunction& f, std::size_t n_max);
ScaledFunction annealed_apply(const Transfer& T, const MarkovEnvironment& env, std::size_t n,
                              const GridFunction& f);

// Perron value of the state-augmented operator (H[c] -> L_c(sum_b Q_bc H[b])),
// i.e. the exact growth rate of A_n(1) on the grid.
double augmented_perron_value(const Transfer& T, const MarkovEnvironment& env, double tol = 1e-14,
                              int max_iter = 5000);

struct SpectralData {
  std::size_t depth = 0;
  Word tail;
  double beta = 0.0;
  std::vector<Word> cylinders;
  std::vector<double> g_o;
  std::vector<double> m;
  // lambda_{i, w tail} per (cylinder, letter)
  std::vector<std::vector<double>> lambda;
  // mu_{w tail} per cylinder, used to evaluate pi
  std::vector<GridMeasure> mu;
  double right_residual = 0.0;
  double left_residual = 0.0;
  int iterations = 0;

  // pi(f) = sum_w m([w]) mu_{w tail}(f)
  double pi(const GridFunction& f) const;
};

// Depth-m cylinder truncation of iota(g)(w) = sum_i lambda_{i,w} p_i(w) g(iw),
// lambda frozen at w.tail; conformal measures at depth `l` letters.
SpectralData iota_spectrum(const Transfer& T, const MarkovEnvironment& env, std::size_t depth,
                           const Word& tail, double tol = 1e-14);

struct AnnealedConvergence {
  double beta = 0.0;
  double beta_iota = 0.0;
  double beta_iota_gap = 0.0;  // |beta(m) - beta(m-1)|
  GridFunction h;
  double pi_f = 0.0;
  double pi_f_iota = 0.0;
  std::vector<std::size_t> n;
  std::vector<double> residual;  // sup_x |A_n f / (beta^n h) - pi(f)|
  std::vector<double> ratio_residual;  // sup_x |A_n f / A_n 1 - pi(f)|
  GeometricFit fit;
};

AnnealedConvergence annealed_convergence(const Transfer& T, const MarkovEnvironment& env,
                                         const GridFunction& f, std::size_t n_lo,
                                         std::size_t n_hi, std::size_t iota_depth = 5,
                                         std::size_t n_limit = 120);

struct DecayOptions {
  std::size_t n_lo = 1;
  std::size_t n_hi = 12;
  std::size_t samples = 1000;
  std::size_t sigma_length = 24;  // left half of the two-sided path
  std::size_t tail_length = 24;   // conformal depth beyond n_hi
  // paths stratified by their first `strata_depth` letters; 0 picks the
  // deepest level with at least 4 samples per stratum
  std::size_t strata_depth = 0;
  std::uint64_t seed = 7;
};

struct DecayReport {
  std::vector<std::size_t> n;
  std::vector<double> lhs;
  std::vector<double> discrepancy;
  std::vector<double> se;
  double pi_tilde = 0.0;
  double pi_tilde_se = 0.0;
  double mean_mu_g = 0.0;
  std::size_t strata = 1;
  bool fitted = false;
  std::string status;
  std::size_t fit_points = 0;
  GeometricFit fit;
};

// Monte-Carlo estimate of
//   E_rho int f o T_{[w]_n} g d mu_w  -  pi~(f) E_rho mu_w(g)
// over stationary two-sided paths (sigma | omega). Requires an invariant rho.
// Stratified by the leading cylinder of omega; SEs are the stratified delta-method ones.
DecayReport annealed_decay(const Transfer& T, const MarkovEnvironment& env, const GridFunction& f,
                           const GridFunction& g, const DecayOptions& opt);

// nu_n^x = A_n^* delta_x / A_n(1)(x) through the backward row-vector recursion
// R_n[b] = e_x M_b, R_j[b] = (sum_c Q_bc R_{j+1}[c]) M_b.
GridMeasure annealed_dual(const Transfer& T, const MarkovEnvironment& env, std::size_t n,
                          std::size_t node);

struct Equidistribution {
  std::vector<std::size_t> n;
  std::vector<double> w_pair;        // W(nu_n^{x1}, nu_n^{x2})
  std::vector<double> w_to_limit;    // W(nu_n^{x1}, nu_limit)
  std::vector<double> pressure;      // (1/n) log sup A_n(1)
  GridMeasure limit;
  GeometricFit fit;
};

Equidistribution equidistribution(const Transfer& T, const MarkovEnvironment& env,
                                  std::size_t node1, std::size_t node2,
                                  const std::vector<std::size_t>& n_values,
                                  std::size_t n_limit = 80);

}  // namespace semitherm
