#pragma once

#include <string>
#include <vector>

#include "semitherm/dynamics.hpp"
#include "semitherm/environment.hpp"
#include "semitherm/ncifs.hpp"

namespace semitherm::fixtures {

// x -> 2x, phi = 0; lambda_w = 2^|w|.
ExpandingSystem doubling_zero();
// {x -> 2x, x -> 3x}, phi = 0.
ExpandingSystem mixed_zero();
// {x -> 2x, x -> 3x}, phi_1 = cos 2 pi x, phi_2 = 0.5 sin 2 pi x.
ExpandingSystem mixed_cos();
// x -> 2x with phi = cos 2 pi x.
ExpandingSystem doubling_cos();
// Smooth non-linear generators (disc-automorphism conjugates), cos potentials.
ExpandingSystem mobius_cos();
// {x -> 2x, x -> 4x}, phi = 0: commuting generators.
ExpandingSystem commuting_zero();
// x -> 3x with the constant potential -delta log 3.
ExpandingSystem tripling_constant(double delta);

MarkovEnvironment bernoulli_half();
// Q = [[.7,.3],[.4,.6]] started from its stationary vector (4/7, 3/7).
MarkovEnvironment markov_73();
// Same Q started from (1/2, 1/2); not invariant.
MarkovEnvironment markov_73_nonstationary();
MarkovEnvironment single_state();

// {x/3, x/3 + 2/3}: dimension log 2 / log 3.
Ncifs cantor_third(std::size_t n = kDefaultGridSize);
// Bernoulli(1/2) mixture of two maps of ratio 1/4 and four maps of ratio 1/8.
Ncifs mixture_4_8(std::size_t n = kDefaultGridSize);
// single map x/2: P(0) = 0.
Ncifs single_half(std::size_t n = kDefaultGridSize);
// Cantor maps with a smooth non-affine bend.
Ncifs cantor_bent(std::size_t n = kDefaultGridSize);

struct CatalogEntry {
  std::string name;
  std::string kind;
  std::string reference;
  std::string source;
};
std::vector<CatalogEntry> catalog();

ExpandingSystem system_by_name(const std::string& name);
MarkovEnvironment environment_by_name(const std::string& name);
Ncifs ncifs_by_name(const std::string& name, std::size_t n = kDefaultGridSize);

}  // namespace semitherm::fixtures
