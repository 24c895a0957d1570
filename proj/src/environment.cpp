#include "semitherm/environment.hpp"

#include <cmath>

#include "semitherm/errors.hpp"

namespace semitherm {

MarkovEnvironment::MarkovEnvironment(std::vector<double> initial,
                                     std::vector<std::vector<double>> transition, bool invariant)
    : initial_(std::move(initial)), q_(std::move(transition)), invariant_(invariant) {
  const std::size_t k = initial_.size();
  if (k == 0 || k > 9) throw ConfigError("environment needs between 1 and 9 states");
  if (q_.size() != k) throw ConfigError("transition matrix must be k x k");
  double s = 0.0;
  for (double x : initial_) {
    if (!(x >= 0.0)) throw ConfigError("initial vector has negative entries");
    s += x;
  }
  if (std::fabs(s - 1.0) > 1e-12) throw ConfigError("initial vector must sum to 1");
  for (const auto& row : q_) {
    if (row.size() != k) throw ConfigError("transition matrix must be k x k");
    double r = 0.0;
    for (double x : row) {
      if (!(x >= 0.0)) throw ConfigError("transition matrix has negative entries");
      r += x;
    }
    if (std::fabs(r - 1.0) > 1e-12) throw ConfigError("transition rows must sum to 1");
  }
  // primitivity: the support pattern has a strictly positive power
  std::vector<std::vector<int>> pat(k, std::vector<int>(k)), cur;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) pat[i][j] = q_[i][j] > 0.0;
  cur = pat;
  bool primitive = false;
  for (std::size_t p = 1; p <= (k - 1) * (k - 1) + 1; ++p) {
    bool all = true;
    for (const auto& row : cur)
      for (int x : row) all = all && x;
    if (all) {
      primitive = true;
      break;
    }
    std::vector<std::vector<int>> nxt(k, std::vector<int>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t l = 0; l < k; ++l)
        if (cur[i][l])
          for (std::size_t j = 0; j < k; ++j) nxt[i][j] |= pat[l][j];
    cur = nxt;
  }
  if (!primitive) throw ConfigError("transition matrix is not primitive");
  if (invariant_) {
    for (std::size_t j = 0; j < k; ++j) {
      double v = 0.0;
      for (std::size_t i = 0; i < k; ++i) v += initial_[i] * q_[i][j];
      if (std::fabs(v - initial_[j]) > 1e-12)
        throw ConfigError("environment flagged invariant but initial Q != initial");
    }
  }
}

MarkovEnvironment MarkovEnvironment::bernoulli(std::vector<double> p) {
  std::vector<std::vector<double>> q(p.size(), p);
  return MarkovEnvironment(p, q, true);
}

bool MarkovEnvironment::is_bernoulli() const {
  for (const auto& row : q_)
    for (std::size_t j = 0; j < row.size(); ++j)
      if (std::fabs(row[j] - initial_[j]) > 1e-15) return false;
  return true;
}

std::vector<double> MarkovEnvironment::stationary() const {
  const std::size_t k = initial_.size();
  std::vector<double> v(k, 1.0 / static_cast<double>(k));
  for (int it = 0; it < 100000; ++it) {
    std::vector<double> w(k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) w[j] += v[i] * q_[i][j];
    double d = 0.0;
    for (std::size_t j = 0; j < k; ++j) d += std::fabs(w[j] - v[j]);
    v = w;
    if (d < 1e-16) break;
  }
  return v;
}

double MarkovEnvironment::cylinder_mass(const Word& w) const {
  if (w.empty()) return 1.0;
  double m = initial(w[0]);
  for (std::size_t j = 1; j < w.size(); ++j) m *= Q(w[j - 1], w[j]);
  return m;
}

double MarkovEnvironment::p_cocycle(int i, int omega1) const {
  if (!(initial(omega1) > 0.0)) throw NumericalGuard("cocycle needs a positive initial vector");
  return initial(i) * Q(i, omega1) / initial(omega1);
}

namespace {
int draw(std::mt19937_64& rng, const std::vector<double>& p) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng);
  double c = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    c += p[i];
    if (r < c) return static_cast<int>(i);
  }
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] > 0) return static_cast<int>(i);
  return 0;
}
}  // namespace

Word MarkovEnvironment::sample(std::mt19937_64& rng, std::size_t length) const {
  std::vector<int> l;
  l.reserve(length);
  if (length == 0) return Word();
  l.push_back(draw(rng, initial_));
  for (std::size_t j = 1; j < length; ++j) l.push_back(draw(rng, q_[static_cast<std::size_t>(l.back())]));
  return Word(std::move(l));
}

Word MarkovEnvironment::extend(std::mt19937_64& rng, int last, std::size_t length) const {
  std::vector<int> l;
  l.reserve(length);
  int prev = last;
  for (std::size_t j = 0; j < length; ++j) {
    prev = draw(rng, q_[static_cast<std::size_t>(prev)]);
    l.push_back(prev);
  }
  return Word(std::move(l));
}

Word MarkovEnvironment::precede(std::mt19937_64& rng, int first, std::size_t length) const {
  if (!invariant_) throw ConfigError("time reversal needs an invariant environment");
  std::vector<int> l(length);
  int next = first;
  std::vector<double> p(initial_.size());
  for (std::size_t j = length; j-- > 0;) {
    for (std::size_t a = 0; a < p.size(); ++a) p[a] = p_cocycle(static_cast<int>(a), next);
    next = draw(rng, p);
    l[j] = next;
  }
  return Word(std::move(l));
}

}  // namespace semitherm
