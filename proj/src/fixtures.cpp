#include "semitherm/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "semitherm/errors.hpp"

namespace semitherm::fixtures {

namespace {

constexpr double kPi = std::numbers::pi;

Potential cos_potential() {
  Potential p;
  p.fn = [](double x) { return std::cos(2.0 * kPi * x); };
  p.holder_alpha = 1.0;
  p.holder_const = 2.0 * kPi;
  p.label = "cos(2*pi*x)";
  return p;
}

Potential half_sin_potential() {
  Potential p;
  p.fn = [](double x) { return 0.5 * std::sin(2.0 * kPi * x); };
  p.holder_alpha = 1.0;
  p.holder_const = kPi;
  p.label = "0.5*sin(2*pi*x)";
  return p;
}

}  // namespace

ExpandingSystem doubling_zero() {
  return ExpandingSystem({CircleMap::linear(2)}, {Potential::zero()}, 0.2, 0.5);
}

ExpandingSystem mixed_zero() {
  return ExpandingSystem({CircleMap::linear(2), CircleMap::linear(3)},
                         {Potential::zero(), Potential::zero()}, 0.15, 0.5);
}

ExpandingSystem mixed_cos() {
  return ExpandingSystem({CircleMap::linear(2), CircleMap::linear(3)},
                         {cos_potential(), half_sin_potential()}, 0.15, 0.5);
}

ExpandingSystem doubling_cos() {
  return ExpandingSystem({CircleMap::linear(2)}, {cos_potential()}, 0.2, 0.5);
}

ExpandingSystem mobius_cos() {
  return ExpandingSystem({CircleMap::mobius(2, 0.2), CircleMap::mobius(3, 0.2)},
                         {cos_potential(), half_sin_potential()}, 0.1, 0.75);
}

ExpandingSystem commuting_zero() {
  return ExpandingSystem({CircleMap::linear(2), CircleMap::linear(4)},
                         {Potential::zero(), Potential::zero()}, 0.1, 0.5);
}

ExpandingSystem tripling_constant(double delta) {
  Potential p;
  const double c = -delta * std::log(3.0);
  p.fn = [c](double) { return c; };
  p.holder_alpha = 1.0;
  p.holder_const = 0.0;
  p.label = "constant";
  return ExpandingSystem({CircleMap::linear(3)}, {p}, 0.15, 1.0 / 3.0);
}

MarkovEnvironment bernoulli_half() { return MarkovEnvironment::bernoulli({0.5, 0.5}); }

MarkovEnvironment markov_73() {
  return MarkovEnvironment({4.0 / 7.0, 3.0 / 7.0}, {{0.7, 0.3}, {0.4, 0.6}}, true);
}

MarkovEnvironment markov_73_nonstationary() {
  return MarkovEnvironment({0.5, 0.5}, {{0.7, 0.3}, {0.4, 0.6}}, false);
}

MarkovEnvironment single_state() { return MarkovEnvironment::bernoulli({1.0}); }

Ncifs cantor_third(std::size_t n) {
  return Ncifs({{{1.0 / 3.0, 0.0}, {1.0 / 3.0, 2.0 / 3.0}}}, single_state(), n);
}

Ncifs mixture_4_8(std::size_t n) {
  std::vector<IfsMap> a = {{0.25, 0.0}, {0.25, 0.75}};
  std::vector<IfsMap> b = {{0.125, 0.0}, {0.125, 0.25}, {0.125, 0.5}, {0.125, 0.75}};
  return Ncifs({a, b}, bernoulli_half(), n);
}

Ncifs single_half(std::size_t n) { return Ncifs({{{0.5, 0.0}}}, single_state(), n); }

Ncifs cantor_bent(std::size_t n) {
  return Ncifs({{{1.0 / 3.0, 0.0, 0.3}, {1.0 / 3.0, 2.0 / 3.0, -0.2}}}, single_state(), n);
}

std::vector<CatalogEntry> catalog() {
  return {
      {"doubling-zero-potential", "system", "λ=2 exact", "analytic: two branches, unit weights"},
      {"mixed-zero", "system", "λ_w = product of branch counts; A_n(1) = (5/2)^n under bernoulli-half",
       "analytic"},
      {"mixed-cos", "system", "C_phi = 4π, Delta = 16π; no closed form", "numerical"},
      {"doubling-cos", "system", "single-generator cos potential; Perron data by dense eigensolve",
       "numerical"},
      {"mobius-cos", "system", "smooth non-linear branches, explicit inverses", "numerical"},
      {"tripling-half", "system", "λ=sqrt(3) exact (x3, φ = -(1/2) log 3)", "analytic: 3 * 3^-1/2"},
      {"commuting-zero", "system", "x2 and x4 commute: equilibria collapse to Lebesgue", "analytic"},
      {"bernoulli-half", "environment", "i.i.d. (1/2, 1/2)", "analytic"},
      {"markov-73", "environment", "Q = [[.7,.3],[.4,.6]], stationary (4/7, 3/7)", "analytic"},
      {"markov-73-nonstationary", "environment", "same Q from (1/2, 1/2)", "analytic"},
      {"cantor-third", "ifs", "delta0=log2/log3", "analytic: 2 * 3^-delta = 1"},
      {"mixture-4-8", "ifs", "delta0 solves (2*4^-d + 4*8^-d)/2 = 1", "closed-form scalar equation"},
      {"single-half", "ifs", "P(0) = 0: degenerate, no dimension bracket", "analytic"},
      {"cantor-bent", "ifs", "smooth non-affine Cantor maps", "numerical"},
  };
}

ExpandingSystem system_by_name(const std::string& name) {
  if (name == "doubling-zero-potential") return doubling_zero();
  if (name == "mixed-zero") return mixed_zero();
  if (name == "mixed-cos") return mixed_cos();
  if (name == "doubling-cos") return doubling_cos();
  if (name == "mobius-cos") return mobius_cos();
  if (name == "commuting-zero") return commuting_zero();
  if (name == "tripling-half") return tripling_constant(0.5);
  throw ConfigError("unknown system fixture '" + name + "'");
}

MarkovEnvironment environment_by_name(const std::string& name) {
  if (name == "bernoulli-half") return bernoulli_half();
  if (name == "markov-73") return markov_73();
  if (name == "markov-73-nonstationary") return markov_73_nonstationary();
  if (name == "single-state") return single_state();
  throw ConfigError("unknown environment fixture '" + name + "'");
}

Ncifs ncifs_by_name(const std::string& name, std::size_t n) {
  if (name == "cantor-third") return cantor_third(n);
  if (name == "mixture-4-8") return mixture_4_8(n);
  if (name == "single-half") return single_half(n);
  if (name == "cantor-bent") return cantor_bent(n);
  throw ConfigError("unknown IFS fixture '" + name + "'");
}

}  // namespace semitherm::fixtures
