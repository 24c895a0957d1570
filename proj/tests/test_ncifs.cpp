#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "semitherm/errors.hpp"
#include "semitherm/fixtures.hpp"
#include "semitherm/ncifs.hpp"

using namespace semitherm;

TEST_SUITE("ncifs") {
  TEST_CASE("P(0) is the log branch count, Cantor closed form") {
    const auto c = fixtures::cantor_third(256);
    CHECK(annealed_pressure(c, 0.0).P == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    for (double d : {0.2, 0.5, 1.0, 2.0})
      CHECK(std::fabs(annealed_pressure(c, d).P - std::log(2.0 * std::pow(3.0, -d))) < 1e-8);
  }

  TEST_CASE("mixture: closed form, bounds and monotonicity") {
    const auto m = fixtures::mixture_4_8(256);
    const double emin = -std::log(m.eta_plus()), emax = -std::log(m.eta_minus());
    double prev = annealed_pressure(m, 0.0).P;
    CHECK(prev >= std::log(static_cast<double>(m.min_branches())) - 1e-12);
    for (double d = 0.1; d <= 2.0; d += 0.1) {
      const double P = annealed_pressure(m, d).P;
      CHECK(std::fabs(P - std::log(std::pow(4.0, -d) + 2.0 * std::pow(8.0, -d))) < 1e-8);
      const double drop = prev - P;
      CHECK(drop >= 0.1 * emin - 1e-9);
      CHECK(drop <= 0.1 * emax + 1e-9);
      prev = P;
    }
  }

  TEST_CASE("Bowen roots") {
    const auto c = fixtures::cantor_third(256);
    CHECK(std::fabs(bowen_root(c).delta0 - std::log(2.0) / std::log(3.0)) < 1e-8);
    const auto m = fixtures::mixture_4_8(256);
    const double ref = oracle::bisect(
        [](double d) { return std::log(std::pow(4.0, -d) + 2.0 * std::pow(8.0, -d)); }, 0.0, 4.0);
    CHECK(std::fabs(bowen_root(m).delta0 - ref) < 1e-8);
    CHECK_THROWS_AS(bowen_root(fixtures::single_half(64)), NumericalGuard);
  }

  TEST_CASE("bent maps: derivative and root between affine bounds") {
    IfsMap f{1.0 / 3.0, 0.0, 0.3};
    for (double x : {0.1, 0.4, 0.8}) {
      const double fd = (f.apply(x + 1e-6) - f.apply(x - 1e-6)) / 2e-6;
      CHECK(std::fabs(fd - f.derivative(x)) < 1e-8);
    }
    const auto b = fixtures::cantor_bent(512);
    const double d = bowen_root(b).delta0;
    const double lo = std::log(2.0) / -std::log(b.eta_minus());
    const double hi = std::log(2.0) / -std::log(b.eta_plus());
    CHECK(d > lo);
    CHECK(d < hi);
  }

  TEST_CASE("quenched pressure below annealed") {
    const auto m = fixtures::mixture_4_8(256);
    std::mt19937_64 rng(4);
    const Word om = m.environment().sample(rng, 400);
    for (double d : {0.3, 0.7}) {
      const double q = quenched_pressure(m, om, d);
      double ref = 0.0;
      for (std::size_t k = 0; k < om.size(); ++k)
        ref += om[k] == 0 ? std::log(2.0 * std::pow(4.0, -d)) : std::log(4.0 * std::pow(8.0, -d));
      CHECK(std::fabs(q - ref / static_cast<double>(om.size())) < 1e-10);
      CHECK(0.5 * (std::log(2.0 * std::pow(4.0, -d)) + std::log(4.0 * std::pow(8.0, -d))) <=
            annealed_pressure(m, d).P + 1e-12);
    }
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(Ncifs({{{0.5, 0.0}, {0.5, 0.4}}}, fixtures::single_state(), 64), ConfigError);
    CHECK_THROWS_AS(Ncifs({{{1.2, 0.0}}}, fixtures::single_state(), 64), ConfigError);
    CHECK_THROWS_AS(Ncifs({{{0.5, 0.0}}}, fixtures::bernoulli_half(), 64), ConfigError);
  }
}
