#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "semitherm/fixtures.hpp"
#include "semitherm/transfer.hpp"

using namespace semitherm;

namespace {
Word random_word(std::mt19937_64& rng, int k, std::size_t max_len, std::size_t min_len = 0) {
  std::vector<int> l(min_len + rng() % (max_len - min_len + 1));
  for (auto& x : l) x = static_cast<int>(rng() % static_cast<unsigned>(k));
  return Word(l);
}
const double kPi = std::numbers::pi;
}  // namespace

TEST_SUITE("transfer") {
  TEST_CASE("phi = 0 acts on constants by the branch count") {
    Transfer T(fixtures::mixed_zero(), 256);
    const auto g = T.apply_word(Word::parse("1221"), GridFunction::constant(256, 1.0));
    CHECK(g.min() == doctest::Approx(36.0));
    CHECK(g.max() == doctest::Approx(36.0));
  }

  TEST_CASE("normalization and composition law") {
    Transfer T(fixtures::mobius_cos(), 256);
    std::mt19937_64 rng(9);
    const auto f = GridFunction::sample(256, [](double x) { return std::sin(2 * kPi * x) + 0.2; });
    for (int t = 0; t < 10; ++t) {
      const Word u = random_word(rng, 2, 6), v = random_word(rng, 2, 6), w = random_word(rng, 2, 6);
      const auto one = T.normalized_quotient(u, v, GridFunction::constant(256, 1.0));
      CHECK(std::fabs(one.max() - 1.0) < 1e-12);
      CHECK(std::fabs(one.min() - 1.0) < 1e-12);
      const auto lhs = T.normalized_quotient(u + v, w, T.normalized_quotient(u, v, f));
      const auto rhs = T.normalized_quotient(u, v + w, f);
      CHECK((lhs - rhs).sup_norm() < 1e-9);
    }
  }

  TEST_CASE("letter composition against branch enumeration") {
    Transfer lin(fixtures::mixed_zero(), 1024);
    Transfer cub(fixtures::mixed_cos(), 1024, Scheme::cubic);
    for (const char* s : {"1", "2", "21", "122", "2121"}) {
      const Word v = Word::parse(s);
      const auto gl = lin.apply_word(v, GridFunction::constant(1024, 1.0));
      const auto gc = cub.apply_word(v, GridFunction::constant(1024, 1.0));
      for (std::size_t j = 0; j < 1024; j += 37) {
        const double x = j / 1024.0;
        CHECK(std::fabs(gl[j] - oracle::brute_force_L(lin.system(), v, [](double) { return 1.0; }, x)) < 1e-10);
        CHECK(std::fabs(gc[j] - oracle::brute_force_L(cub.system(), v, [](double) { return 1.0; }, x)) < 1e-6);
      }
    }
  }

  TEST_CASE("linear scheme error is second order") {
    const auto sys = fixtures::mixed_cos();
    const Word v = Word::parse("12");
    double err[2];
    int i = 0;
    for (std::size_t n : {256, 512}) {
      Transfer T(sys, n);
      const auto g = T.apply_word(v, GridFunction::constant(n, 1.0));
      double e = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        e = std::max(e, std::fabs(g[j] - oracle::brute_force_L(sys, v, [](double) { return 1.0; }, double(j) / n)));
      err[i++] = e;
    }
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.15));
  }

  TEST_CASE("dual pairing and mass conservation") {
    Transfer T(fixtures::mixed_cos(), 256);
    const Word u = Word::parse("21"), v = Word::parse("1122");
    const auto f = GridFunction::sample(256, [](double x) { return std::cos(6 * kPi * x); });
    std::vector<double> w(256);
    std::mt19937_64 rng(2);
    for (auto& x : w) x = std::uniform_real_distribution<double>(0, 1)(rng);
    const GridMeasure mu = GridMeasure(w).normalized();
    const GridMeasure back = T.dual_quotient(u, v, mu);
    CHECK(back.mass() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::fabs(back.integrate(f) - mu.integrate(T.normalized_quotient(u, v, f))) < 1e-13);
    for (std::size_t j = 0; j < 256; ++j) CHECK(back[j] >= 0.0);
  }

  TEST_CASE("sparse and dense matrices agree with the stencil") {
    Transfer T(fixtures::mobius_cos(), 64);
    const auto f = GridFunction::sample(64, [](double x) { return 1.0 + x * (1 - x); });
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(f.values().data(), 64);
    const Eigen::VectorXd a = T.sparse_matrix(1) * v, b = T.dense_matrix(1) * v;
    const auto g = T.apply_letter(1, f);
    for (int j = 0; j < 64; ++j) {
      CHECK(a[j] == doctest::Approx(g[j]));
      CHECK(b[j] == doctest::Approx(g[j]));
    }
  }

  TEST_CASE("comparability of L_v(1) stays bounded") {
    Transfer T(fixtures::mixed_cos(), 256);
    double prev = 0.0;
    for (std::size_t n = 2; n <= 16; n += 2) {
      const double r = T.comparability_ratio(Word::periodic(Word::parse("12"), n));
      CHECK(r >= 1.0);
      if (prev > 0) CHECK(r < 2.0 * prev);
      prev = r;
    }
  }

  TEST_CASE("holder seminorms") {
    const auto mc = fixtures::mixed_cos().metric_constants();
    const auto c = holder_seminorms(mc, GridFunction::constant(256, 3.0));
    CHECK(c.oscillation == 0.0);
    CHECK(c.D_bar == 0.0);
    const auto s = holder_seminorms(mc, GridFunction::sample(256, [](double x) { return std::sin(2 * kPi * x); }));
    CHECK(s.oscillation == doctest::Approx(2.0).epsilon(1e-3));
    // Lipschitz constant of sin(2 pi x) is 2 pi, attained on short scales
    CHECK(s.D_alpha_loc <= 2 * kPi + 1e-9);
    CHECK(s.D_alpha_loc == doctest::Approx(2 * kPi).epsilon(1e-3));
    CHECK(s.D_bar >= s.oscillation);
  }
}
