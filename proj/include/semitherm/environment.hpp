#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "semitherm/word.hpp"

namespace semitherm {

// Markov measure rho on the one-sided shift over {0..k-1}.
class MarkovEnvironment {
 public:
  MarkovEnvironment(std::vector<double> initial, std::vector<std::vector<double>> transition,
                    bool invariant);
  static MarkovEnvironment bernoulli(std::vector<double> p);

  int size() const { return static_cast<int>(initial_.size()); }
  double initial(int i) const { return initial_[static_cast<std::size_t>(i)]; }
  double Q(int i, int j) const {
    return q_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  const std::vector<double>& initial() const { return initial_; }
  const std::vector<std::vector<double>>& transition() const { return q_; }
  bool invariant() const { return invariant_; }
  // every row equal to the initial vector
  bool is_bernoulli() const;
  // left Perron vector of Q
  std::vector<double> stationary() const;

  // rho([w]) = initial_{w1} prod Q_{w_j w_{j+1}}
  double cylinder_mass(const Word& w) const;
  // p_i(omega) = initial_i Q_{i,omega_1} / initial_{omega_1}
  double p_cocycle(int i, int omega1) const;

  Word sample(std::mt19937_64& rng, std::size_t length) const;
  // Continue a path whose last letter is `last`.
  Word extend(std::mt19937_64& rng, int last, std::size_t length) const;
  // `length` letters preceding `first` under the time-reversed chain (needs invariance)
  Word precede(std::mt19937_64& rng, int first, std::size_t length) const;

 private:
  std::vector<double> initial_;
  std::vector<std::vector<double>> q_;
  bool invariant_;
};

}  // namespace semitherm
