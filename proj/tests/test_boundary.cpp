#include <doctest.h>

#include <cmath>

#include "semitherm/boundary.hpp"
#include "semitherm/errors.hpp"
#include "semitherm/fixtures.hpp"
#include "semitherm/measures.hpp"
#include "semitherm/transport.hpp"

using namespace semitherm;

TEST_SUITE("boundary") {
  TEST_CASE("word metric") {
    CHECK(word_metric(Word::parse("12"), Word::parse("12")) == 0.0);
    CHECK(word_metric(Word::parse("12"), Word::parse("13")) == doctest::Approx(0.75));
    CHECK(word_metric(Word::parse("1"), Word::parse("2")) == doctest::Approx(1.0));
    CHECK(word_metric(Word::parse("12"), Word::parse("122")) == doctest::Approx(0.125 + 0.25));
  }

  TEST_CASE("kappa") {
    const auto mz = fixtures::mixed_zero();
    CHECK(kappa(mz, Word::parse("12")) == doctest::Approx(6.0));
    CHECK(kappa(fixtures::doubling_zero(), Word::repeat(0, 5)) == doctest::Approx(32.0));
    const auto mob = fixtures::mobius_cos();
    const double lam = mob.metric_constants().lambda;
    for (const char* w : {"1", "12", "2211"})
      CHECK(kappa(mob, Word::parse(w)) >= std::pow(lam, -static_cast<double>(std::string(w).size())) - 1e-9);
  }

  TEST_CASE("phi = 0: equilibria coincide, distance is 1/kappa + 1/kappa") {
    Transfer T(fixtures::mixed_zero(), 256);
    ElementCache c(T, 24);
    CHECK(c.distance(Word::parse("12"), Word::parse("12")) == 0.0);
    CHECK(c.distance(Word::parse("12"), Word::parse("2")) == doctest::Approx(1.0 / 6 + 1.0 / 3).epsilon(1e-9));
  }

  TEST_CASE("single letter element is h dnu") {
    Transfer T(fixtures::mixed_cos(), 256);
    const auto e = make_element(T, Word::parse("1"), 60);
    const auto dp = dense_perron(T, Word::parse("1"));
    std::vector<double> w(256);
    for (std::size_t j = 0; j < 256; ++j) w[j] = dp.left[j] * dp.right[j];
    const auto ref = GridMeasure(w).normalized();
    CHECK(wasserstein_euclid(e.equilibrium, ref) < 1e-8);
  }

  TEST_CASE("nested words converge, distinct cores stay apart") {
    Transfer T(fixtures::mixed_cos(), 256);
    ElementCache c(T, 24);
    const auto a = cauchy_probe(c, nested_words(Word::parse("12"), Word::parse("1"), Word::parse("12"), 1, 7));
    const auto b = cauchy_probe(c, nested_words(Word::parse("21"), Word::parse("1"), Word::parse("21"), 1, 7));
    CHECK(a.is_cauchy);
    CHECK(b.is_cauchy);
    CHECK(a.fit.rate < 1.0);
    const auto mc = T.system().metric_constants();
    CHECK(wasserstein_dstar(mc, a.limit, b.limit) > 0.05);
    CHECK_THROWS_AS(cauchy_probe(c, nested_words(Word::parse("1"), Word(), Word(), 1, 3)), ConfigError);
  }

  TEST_CASE("commuting generators collapse") {
    Transfer T(fixtures::commuting_zero(), 128);
    ElementCache c(T, 24);
    CHECK(c.wbar(Word::parse("12"), Word::parse("21")) < 1e-12);
    CHECK(c.wbar(Word::parse("1"), Word::parse("2222")) < 1e-12);
  }

  TEST_CASE("metric axioms on a small pool") {
    Transfer T(fixtures::mixed_cos(), 128);
    ElementCache c(T, 24);
    const std::vector<Word> pool = {Word::parse("1"), Word::parse("2"), Word::parse("12"),
                                    Word::parse("21"), Word::parse("112"), Word::parse("1212")};
    std::vector<std::array<std::size_t, 3>> tr;
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = 0; j < pool.size(); ++j)
        for (std::size_t k = 0; k < pool.size(); ++k) tr.push_back({i, j, k});
    const auto r = check_metric_axioms(pool, tr, [&](const Word& x, const Word& y) { return c.distance(x, y); }, 1e-12);
    CHECK(r.failures == 0);
    const auto rw = check_metric_axioms(pool, tr, word_metric, 1e-15);
    CHECK(rw.failures == 0);
  }
}
