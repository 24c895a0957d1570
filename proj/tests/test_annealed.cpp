#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "semitherm/annealed.hpp"
#include "semitherm/errors.hpp"
#include "semitherm/fixtures.hpp"

using namespace semitherm;

namespace {
const double kPi = std::numbers::pi;
GridFunction value(const ScaledFunction& s) { return s.f * std::exp(s.log_scale); }
}  // namespace

TEST_SUITE("annealed") {
  TEST_CASE("DP equals the word sum") {
    Transfer T(fixtures::mixed_cos(), 128);
    const auto env = fixtures::markov_73_nonstationary();
    const auto f = GridFunction::sample(128, [](double x) { return 1.0 + 0.5 * std::sin(2 * kPi * x); });
    const auto seq = annealed_sequence(T, env, f, 4);
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto bf = oracle::brute_force_annealed(T, env, f, n);
      CHECK((value(seq[n - 1]) - bf).sup_norm() / bf.sup_norm() < 1e-12);
    }
  }

  TEST_CASE("Bernoulli: A_n is the n-th power of A_1") {
    Transfer T(fixtures::mixed_cos(), 128);
    const auto env = fixtures::bernoulli_half();
    const auto f = GridFunction::sample(128, [](double x) { return std::cos(2 * kPi * x) + 2.0; });
    const auto seq = annealed_sequence(T, env, f, 6);
    GridFunction p = f;
    for (std::size_t n = 1; n <= 6; ++n) {
      p = value(annealed_apply(T, env, 1, p));
      CHECK((value(seq[n - 1]) - p).sup_norm() / p.sup_norm() < 1e-12);
    }
  }

  TEST_CASE("Markov: A_{n+m} differs from A_n A_m") {
    Transfer T(fixtures::mixed_cos(), 128);
    const auto env = fixtures::markov_73();
    const auto f = GridFunction::constant(128, 1.0);
    const auto a4 = value(annealed_apply(T, env, 4, f));
    const auto a22 = value(annealed_apply(T, env, 2, value(annealed_apply(T, env, 2, f))));
    CHECK((a4 - a22).sup_norm() / a4.sup_norm() > 1e-3);
  }

  TEST_CASE("phi = 0: growth rate is the spectral radius of diag(m) Q^T") {
    Transfer T(fixtures::mixed_zero(), 128);
    const auto env = fixtures::markov_73();
    Eigen::MatrixXd M(2, 2);
    M << 2 * 0.7, 2 * 0.4, 3 * 0.3, 3 * 0.6;
    CHECK(std::fabs(augmented_perron_value(T, env) - oracle::spectral_radius(M)) < 1e-10);
    CHECK(std::fabs(augmented_perron_value(T, fixtures::bernoulli_half()) - 2.5) < 1e-12);
  }

  TEST_CASE("iota truncation approaches the DP growth rate") {
    Transfer T(fixtures::mixed_cos(), 256);
    const auto env = fixtures::markov_73();
    const double beta = augmented_perron_value(T, env);
    const Word tail = Word::repeat(0, 24);
    const auto s2 = iota_spectrum(T, env, 2, tail);
    const auto s4 = iota_spectrum(T, env, 4, tail);
    CHECK(std::fabs(s4.beta - beta) < std::fabs(s2.beta - beta) + 1e-12);
    CHECK(std::fabs(s4.beta - beta) / beta < 1e-3);
    CHECK(s4.right_residual < 1e-10);
    double ms = 0.0;
    for (double x : s4.m) ms += x;
    CHECK(ms == doctest::Approx(1.0));
  }

  TEST_CASE("annealed convergence is geometric") {
    Transfer T(fixtures::mixed_cos(), 256);
    const auto f = GridFunction::sample(256, [](double x) { return std::sin(2 * kPi * x); });
    const auto r = annealed_convergence(T, fixtures::markov_73(), f, 4, 16, 3, 80);
    CHECK(r.fit.rate < 1.0);
    CHECK(r.fit.r2 > 0.9);
    CHECK(std::fabs(r.pi_f - r.pi_f_iota) < 1e-2);
  }

  TEST_CASE("decay: phi = 0 control is zero, Markov requires invariance") {
    Transfer T(fixtures::mixed_zero(), 128);
    const auto f = GridFunction::sample(128, [](double x) { return std::cos(2 * kPi * x); });
    DecayOptions o;
    o.samples = 64;
    o.n_hi = 5;
    const auto r = annealed_decay(T, fixtures::markov_73(), f, f, o);
    for (double d : r.discrepancy) CHECK(std::fabs(d) < 1e-12);
    CHECK_FALSE(r.fitted);
    CHECK_THROWS_AS(annealed_decay(T, fixtures::markov_73_nonstationary(), f, f, o), ConfigError);
  }

  TEST_CASE("equidistribution and pressure") {
    Transfer T(fixtures::mixed_zero(), 256);
    const auto env = fixtures::bernoulli_half();
    const auto nu = annealed_dual(T, env, 6, 10);
    CHECK(nu.mass() == doctest::Approx(1.0));
    const auto e = equidistribution(T, env, 0, 85, {2, 4, 6, 8, 10}, 40);
    CHECK(e.fit.rate < 1.0);
    CHECK(std::fabs(e.pressure.back() - std::log(2.5)) < 1e-12);
  }
}
