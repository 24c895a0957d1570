#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "semitherm/fit.hpp"
#include "semitherm/grid.hpp"
#include "semitherm/transfer.hpp"
#include "semitherm/word.hpp"

namespace semitherm {

// 2^-k(prefix) + 2^-k(suffix), k the first 1-based position where the words
// differ, read from the start and from the end; running out of letters counts
// as a difference. 0 iff v == w.
double word_metric(const Word& v, const Word& w);

// Linear generators: product of slopes. Smooth generators: min over a grid of
// |T_w'| (chain rule along the orbit).
double kappa(const ExpandingSystem& sys, const Word& w, std::size_t samples = 4096);

struct SemigroupElement {
  Word word;
  double kappa = 0.0;
  GridMeasure equilibrium;
};

// Equilibrium of T_w from the periodic two-sided extension ...www|www...,
// `min_letters` letters on each side.
SemigroupElement make_element(const Transfer& T, const Word& w, std::size_t min_letters = 48);

// W-bar(mu_v, mu_w) + 1/kappa(v) + 1/kappa(w); 0 for identical words.
double equilibrium_distance(const Transfer& T, const SemigroupElement& v,
                            const SemigroupElement& w);

// Caches elements and their pairwise W-bar.
class ElementCache {
 public:
  explicit ElementCache(const Transfer& T, std::size_t min_letters = 48)
      : T_(T), min_letters_(min_letters) {}
  const SemigroupElement& get(const Word& w);
  double wbar(const Word& v, const Word& w);
  double distance(const Word& v, const Word& w);

 private:
  const Transfer& T_;
  std::size_t min_letters_;
  std::map<Word, SemigroupElement> elements_;
  std::map<std::pair<Word, Word>, double> wbar_;
};

struct CauchyProbe {
  std::vector<Word> words;
  std::vector<double> gaps;       // d_G(w_n, w_{n+1})
  std::vector<double> wbar_gaps;  // W-bar part of each gap
  bool is_cauchy = false;
  std::size_t offending = 0;  // first gap index that fails, if any
  GeometricFit fit;
  GridMeasure limit;
};

// Cauchy if the gaps are positive, fit geometrically with rate < 1 and never
// increase by more than `slack`.
CauchyProbe cauchy_probe(ElementCache& cache, const std::vector<Word>& words,
                         double slack = 1e-12);

struct MetricAxioms {
  std::size_t triples = 0;
  std::size_t failures = 0;
  double worst_triangle = 0.0;  // max of d(x,z) - d(x,y) - d(y,z)
  double worst_symmetry = 0.0;
};

// Checks identity, symmetry and the triangle inequality on sampled triples.
template <class D>
MetricAxioms check_metric_axioms(const std::vector<Word>& pool,
                                 const std::vector<std::array<std::size_t, 3>>& triples, D&& d,
                                 double tol) {
  MetricAxioms r;
  for (const auto& t : triples) {
    const Word& x = pool[t[0]];
    const Word& y = pool[t[1]];
    const Word& z = pool[t[2]];
    const double xy = d(x, y), yx = d(y, x), yz = d(y, z), xz = d(x, z), xx = d(x, x);
    const double tri = xz - xy - yz;
    const double sym = std::abs(xy - yx);
    r.worst_triangle = std::max(r.worst_triangle, tri);
    r.worst_symmetry = std::max(r.worst_symmetry, sym);
    bool ok = tri <= tol && sym <= tol && xx == 0.0 && xy >= 0.0;
    if ((x == y) != (xy == 0.0)) ok = false;
    if (!ok) ++r.failures;
    ++r.triples;
  }
  return r;
}

struct HolderRegression {
  std::size_t pairs = 0;
  double exponent = 0.0;  // fitted gamma in W-bar ~ C d_W*^gamma
  double log_c = 0.0;
  double r2 = 0.0;
};

HolderRegression holder_regression(ElementCache& cache, const std::vector<Word>& pool,
                                   double floor = 1e-12);

// Nested words x^n core y^n style helpers: w_n = left^n + core + right^n.
std::vector<Word> nested_words(const Word& left, const Word& core, const Word& right,
                               std::size_t n_from, std::size_t n_to);

}  // namespace semitherm
