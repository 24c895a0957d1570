#include "semitherm/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "semitherm/errors.hpp"
#include "semitherm/measures.hpp"
#include "semitherm/transport.hpp"

namespace semitherm {

double word_metric(const Word& v, const Word& w) {
  if (v == w) return 0.0;
  const std::size_t m = v.size(), n = w.size();
  std::size_t p = 0;
  while (p < m && p < n && v[p] == w[p]) ++p;
  std::size_t s = 0;
  while (s < m && s < n && v[m - 1 - s] == w[n - 1 - s]) ++s;
  return std::ldexp(1.0, -static_cast<int>(p + 1)) + std::ldexp(1.0, -static_cast<int>(s + 1));
}

double kappa(const ExpandingSystem& sys, const Word& w, std::size_t samples) {
  if (w.empty()) return 1.0;
  bool linear = true;
  for (int l : w.letters()) linear = linear && sys.map(l).is_linear();
  if (linear) {
    double k = 1.0;
    for (int l : w.letters()) k *= sys.map(l).branches();
    return k;
  }
  // log-derivative summed along the orbit, minimised over sample points
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < samples; ++j) {
    double x = static_cast<double>(j) / static_cast<double>(samples);
    double s = 0.0;
    for (int l : w.letters()) {
      s += std::log(std::fabs(sys.map(l).derivative(x)));
      x = sys.map(l).apply(x);
    }
    best = std::min(best, s);
  }
  return std::exp(best);
}

SemigroupElement make_element(const Transfer& T, const Word& w, std::size_t min_letters) {
  if (w.empty()) throw ConfigError("semigroup element needs a nonempty word");
  SemigroupElement e;
  e.word = w;
  e.kappa = kappa(T.system(), w);
  const std::size_t reps = std::max<std::size_t>(1, (min_letters + w.size() - 1) / w.size());
  e.equilibrium = periodic_equilibrium(T, w, reps).normalized();
  return e;
}

double equilibrium_distance(const Transfer& T, const SemigroupElement& v,
                            const SemigroupElement& w) {
  if (v.word == w.word) return 0.0;
  const double wb = wasserstein_dstar(T.system().metric_constants(), v.equilibrium, w.equilibrium);
  return wb + 1.0 / v.kappa + 1.0 / w.kappa;
}

const SemigroupElement& ElementCache::get(const Word& w) {
  auto it = elements_.find(w);
  if (it != elements_.end()) return it->second;
  return elements_.emplace(w, make_element(T_, w, min_letters_)).first->second;
}

double ElementCache::wbar(const Word& v, const Word& w) {
  if (v == w) return 0.0;
  auto key = v < w ? std::make_pair(v, w) : std::make_pair(w, v);
  auto it = wbar_.find(key);
  if (it != wbar_.end()) return it->second;
  const double d = wasserstein_dstar(T_.system().metric_constants(), get(key.first).equilibrium,
                                     get(key.second).equilibrium);
  wbar_.emplace(key, d);
  return d;
}

double ElementCache::distance(const Word& v, const Word& w) {
  if (v == w) return 0.0;
  return wbar(v, w) + 1.0 / get(v).kappa + 1.0 / get(w).kappa;
}

CauchyProbe cauchy_probe(ElementCache& cache, const std::vector<Word>& words, double slack) {
  if (words.size() < 5) throw ConfigError("Cauchy probe needs at least 5 words");
  CauchyProbe r;
  r.words = words;
  std::vector<double> x;
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    r.gaps.push_back(cache.distance(words[i], words[i + 1]));
    r.wbar_gaps.push_back(cache.wbar(words[i], words[i + 1]));
    x.push_back(static_cast<double>(i));
  }
  r.limit = cache.get(words.back()).equilibrium;
  r.is_cauchy = true;
  r.offending = r.gaps.size();
  for (std::size_t i = 0; i < r.gaps.size(); ++i) {
    const bool bad_sign = !(r.gaps[i] >= 0.0) && words[i] != words[i + 1];
    const bool grows = i > 0 && r.gaps[i] > r.gaps[i - 1] + slack;
    if (bad_sign || grows) {
      r.is_cauchy = false;
      r.offending = i;
      break;
    }
  }
  std::vector<double> fx, fy;
  for (std::size_t i = 0; i < r.gaps.size(); ++i)
    if (r.gaps[i] > 0.0) {
      fx.push_back(x[i]);
      fy.push_back(r.gaps[i]);
    }
  if (fx.size() >= 3) {
    r.fit = geometric_fit(fx, fy);
    if (!(r.fit.rate < 1.0) && r.is_cauchy) {
      r.is_cauchy = false;
      r.offending = r.gaps.size() - 1;
    }
  }
  return r;
}

HolderRegression holder_regression(ElementCache& cache, const std::vector<Word>& pool,
                                   double floor) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      if (pool[i] == pool[j]) continue;
      const double w = cache.wbar(pool[i], pool[j]);
      if (w <= floor) continue;
      lx.push_back(std::log(word_metric(pool[i], pool[j])));
      ly.push_back(std::log(w));
    }
  HolderRegression r;
  r.pairs = lx.size();
  if (lx.size() < 3) throw NumericalGuard("too few word pairs above the W-bar floor");
  const LinearFit f = linear_fit(lx, ly);
  r.exponent = f.slope;
  r.log_c = f.intercept;
  r.r2 = f.r2;
  return r;
}

std::vector<Word> nested_words(const Word& left, const Word& core, const Word& right,
                               std::size_t n_from, std::size_t n_to) {
  std::vector<Word> out;
  for (std::size_t n = n_from; n <= n_to; ++n) {
    Word w = core;
    for (std::size_t j = 0; j < n; ++j) w = left + w + right;
    out.push_back(w);
  }
  return out;
}

}  // namespace semitherm
