#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "semitherm/grid.hpp"
#include "semitherm/transfer.hpp"
#include "semitherm/word.hpp"

namespace semitherm {

struct QuenchedMeasure {
  GridMeasure measure;
  Word u;
  Word omega;
  // W-bar distance between the depth l-1 and depth l iterates; negative
  // when not recorded.
  double gap = -1.0;
};

struct EigenData {
  double lambda = 0.0;
  double log_lambda = 0.0;
  GridFunction h;
};

// (P_u^v)^* mu.
GridMeasure dual_apply(const Transfer& T, const Word& u, const Word& v, const GridMeasure& mu);

// mu_{u,omega} ~ (P_u^{[omega]_l})^*(start), start = delta at node 0 by
// default, built letter by letter from the last letter of [omega]_l.
QuenchedMeasure quenched_conformal(const Transfer& T, const Word& u, const Word& omega,
                                   std::size_t l, bool record_gap = true);
QuenchedMeasure quenched_conformal_from(const Transfer& T, const Word& u, const Word& omega,
                                        std::size_t l, const GridMeasure& start,
                                        bool record_gap = false);

// Reference path: P_u^{[omega]_l}(f)(x_node).
double quenched_functional(const Transfer& T, const Word& u, const Word& omega, std::size_t l,
                           const GridFunction& f, std::size_t node = 0);

// lambda_{u,omega} = int L_u(1) d mu_omega, h = L_u(1)/lambda.
EigenData eigen_data(const Transfer& T, const Word& u, const GridMeasure& mu_omega);

// mu_{sigma,omega} with sigma truncated to its last k letters.
QuenchedMeasure bilateral_equilibrium(const Transfer& T, const Word& sigma_suffix,
                                      const Word& omega, std::size_t k, std::size_t l,
                                      bool record_gap = false);

// Equilibrium state of the periodic pair (..www, www..) at depth `reps`
// repetitions on both sides.
GridMeasure periodic_equilibrium(const Transfer& T, const Word& w, std::size_t reps);

// Push a grid measure forward by T_u (atoms moved exactly, then binned).
// Against the grid measure of the image this carries an O(Lip(T_u)/N) error.
GridMeasure pushforward(const Transfer& T, const Word& u, const GridMeasure& mu);

// Perron data of the discretised L_w by dense power iteration (oracle).
struct DensePerron {
  double value = 0.0;
  GridFunction right;  // L_w h = value h, max h = 1
  GridMeasure left;    // probability
  int iterations = 0;
};
DensePerron dense_perron(const Transfer& T, const Word& w, double tol = 1e-13,
                         int max_iter = 20000);

struct ContractionOptions {
  std::size_t trials = 12;
  std::size_t min_length = 1;
  std::size_t max_length = 20;
  std::size_t u_length = 3;
  std::uint64_t seed = 1;
};

struct ContractionPoint {
  std::size_t length = 0;
  double mean_log_ratio = 0.0;
  double max_log_ratio = 0.0;
};

struct ContractionFit {
  std::size_t k0_hat = 0;
  double s_hat = 0.0;
  double r2 = 0.0;
  std::size_t fit_from = 0;
  std::size_t fit_to = 0;
  std::vector<ContractionPoint> points;
};

// Measure version: log W-bar((P_u^v)^* nu1, (P_u^v)^* nu2) - log W-bar(nu1, nu2)
// against |v|, nu_i random atoms on the grid.
ContractionFit contraction_rate(const Transfer& T, const ContractionOptions& opt);
// Function version: log D-bar(P_u^v f) - log D-bar(f) for random trigonometric f.
ContractionFit contraction_rate_functions(const Transfer& T, const ContractionOptions& opt);

// First length from which every sampled pair contracted, then a geometric
// fit of the mean log ratio over [k0, k0 + span].
ContractionFit fit_contraction(std::vector<ContractionPoint> pts, std::size_t span);

}  // namespace semitherm
