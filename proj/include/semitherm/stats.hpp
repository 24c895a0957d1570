#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "semitherm/fit.hpp"
#include "semitherm/grid.hpp"
#include "semitherm/transfer.hpp"
#include "semitherm/word.hpp"

namespace semitherm {

// Coboundary decomposition along a fixed environment word.
// Index k refers to time k: f_k = f - mu_{[w]_k, theta^k w}(f),
// h_0 = 0, h_{k+1} = P_{[w]_k}^{w_{k+1}}(f_k + h_k),
// U_k = f_k o T_{[w]_k} + h_k o T_{[w]_k} - h_{k+1} o T_{[w]_{k+1}}.
struct MartingaleDecomposition {
  Word omega;
  GridFunction f;
  std::size_t n_max = 0;
  std::size_t depth = 0;
  std::vector<double> means;         // k = 0..n_max
  std::vector<GridFunction> f_n;     // k = 0..n_max
  std::vector<GridFunction> h_n;     // k = 0..n_max+1
  std::vector<GridFunction> weight;  // L_{[w]_k}(1) / sup, k = 0..n_max+1
  std::vector<GridMeasure> nu;       // mu_{[w]_k, theta^k w}, k = 0..n_max+1
  std::vector<double> s_sq;          // E (sum_{k<n} f_k o T_{[w]_k})^2, n = 0..n_max
  std::vector<double> sigma_sq;      // sum_{k<n} E U_k^2, n = 0..n_max

  double h_sup() const;
};

// omega needs at least n_max + 1 + depth letters; depth is the conformal
// truncation used for every nu_k and mean.
MartingaleDecomposition build_decomposition(const Transfer& T, const Word& omega,
                                            const GridFunction& f, std::size_t n_max,
                                            std::size_t depth = 40);

// max over the given points and n <= n_max of
// |sum_{k<n} U_k(x) - (sum_{k<n} f_k(T_{[w]_k} x) - h_n(T_{[w]_n} x))|
double telescoping_error(const Transfer& T, const MartingaleDecomposition& d,
                         const std::vector<double>& points);

struct Orthogonality {
  // in the grid chain: psi(X_{n+1}) replaced by its conditional law given X_n
  double discrete = 0.0;
  // psi evaluated exactly at T_a(y) on the grid nodes; carries O(h^2) error
  double continuous = 0.0;
};

// mu_w(U_n . psi o T_{[w]_{n+1}})
Orthogonality reverse_martingale_check(const Transfer& T, const MartingaleDecomposition& d,
                                       std::size_t n, const std::function<double(double)>& psi);

struct CltReport {
  std::string status;
  double ks = 0.0;
  double variance_ratio = 0.0;
  double s_sq = 0.0;
  std::size_t samples = 0;
};

// Samples X_n ~ nu_n by inverse CDF on the grid (uniform jitter inside the
// cell), then walks back through inverse branches with the conditional
// weights exp(phi) L_{[w]_k}(1); x = X_0 is then mu_w-distributed and
// T_{[w]_k} x = X_k exactly.
CltReport quenched_clt_check(const Transfer& T, const MartingaleDecomposition& d, std::size_t n,
                             std::size_t samples, std::uint64_t seed);

double ks_normal(std::vector<double> z);

struct CorrelationDecay {
  std::vector<std::size_t> n;
  std::vector<double> error;  // sup |P_0^{[w]_n} f - mu_w(f)|
  double mu_f = 0.0;
  bool fitted = false;
  GeometricFit fit;
};

CorrelationDecay quenched_correlation_decay(const Transfer& T, const Word& omega,
                                            const GridFunction& f, std::size_t n_lo,
                                            std::size_t n_hi, std::size_t depth = 40);

}  // namespace semitherm
