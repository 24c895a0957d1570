// Acceptance run: one PASS/FAIL line per criterion, with the measured value,
// the pinned tolerance and wall time against the budget.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "semitherm/annealed.hpp"
#include "semitherm/boundary.hpp"
#include "semitherm/errors.hpp"
#include "semitherm/fixtures.hpp"
#include "semitherm/measures.hpp"
#include "semitherm/ncifs.hpp"
#include "semitherm/stats.hpp"
#include "semitherm/transport.hpp"

using namespace semitherm;

namespace {

const double kPi = std::numbers::pi;
constexpr std::size_t kN = 1024;

struct Outcome {
  bool pass = true;
  std::ostringstream msg;

  // records one check; all must hold
  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (msg.tellp() > 0) msg << "; ";
    msg << what << (ok ? "" : " [fail]");
  }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}
std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Word random_word(std::mt19937_64& rng, int k, std::size_t max_len) {
  std::vector<int> l(rng() % (max_len + 1));
  for (auto& x : l) x = static_cast<int>(rng() % static_cast<unsigned>(k));
  return Word(l);
}

GridFunction value(const ScaledFunction& s) { return s.f * std::exp(s.log_scale); }

// 1. P_u^v(1) = 1 and the composition law on random triples.
void normalization(Outcome& o) {
  for (auto [name, sys] : {std::pair{"mixed-cos", fixtures::mixed_cos()},
                           std::pair{"mobius-cos", fixtures::mobius_cos()}}) {
    Transfer T(sys, kN);
    std::mt19937_64 rng(101);
    const auto f = GridFunction::sample(kN, [](double x) { return std::sin(2 * kPi * x) + 0.4 * std::cos(6 * kPi * x); });
    const auto one = GridFunction::constant(kN, 1.0);
    double e1 = 0.0, e2 = 0.0;
    for (int t = 0; t < 100; ++t) {
      const Word u = random_word(rng, 2, 8), v = random_word(rng, 2, 8), w = random_word(rng, 2, 8);
      e1 = std::max(e1, (T.normalized_quotient(u, v, one) + (-1.0)).sup_norm());
      const auto lhs = T.normalized_quotient(u + v, w, T.normalized_quotient(u, v, f));
      e2 = std::max(e2, (lhs - T.normalized_quotient(u, v + w, f)).sup_norm());
    }
    o.check(e1 <= 1e-12, std::string(name) + fmt(" |P1-1| %.2e <= 1e-12", e1));
    o.check(e2 <= 1e-9, std::string(name) + fmt(" composition %.2e <= 1e-9", e2));
  }
}

// 2. Letter-composed L_v against preimage enumeration, all |v| <= 6.
double oracle_error(const Transfer& T, const GridFunction& f, const std::function<double(double)>& fx) {
  double e = 0.0;
  for (std::size_t len = 1; len <= 6; ++len)
    for (const Word& v : oracle::all_words(T.alphabet_size(), len)) {
      const auto g = T.apply_word(v, f);
      for (std::size_t j = 0; j < kN; ++j)
        e = std::max(e, std::fabs(g[j] - oracle::brute_force_L(T.system(), v, fx, f.node(j))));
    }
  return e;
}

void oracle_equivalence(Outcome& o) {
  const auto fx = [](double x) { return 1.0 + 0.5 * std::sin(2 * kPi * x); };
  const auto f = GridFunction::sample(kN, fx);
  // integer-linear maps with phi = 0 send piecewise-linear functions on the
  // grid to piecewise-linear functions on the grid, so the scheme is exact
  // for the interpolant of f
  const double lin = oracle_error(Transfer(fixtures::mixed_zero(), kN), f, [&f](double x) { return f(x); });
  o.check(lin <= 1e-10, fmt("linear fixture (mixed-zero, linear scheme) %.2e <= 1e-10", lin));
  const double lin_an = oracle_error(Transfer(fixtures::mixed_zero(), kN), f, fx);
  const double smooth = oracle_error(Transfer(fixtures::mixed_cos(), kN, Scheme::cubic), f, fx);
  o.check(smooth <= 1e-6, fmt("smooth fixture (mixed-cos, cubic scheme) %.2e <= 1e-6", smooth));
  const double mob = oracle_error(Transfer(fixtures::mobius_cos(), kN, Scheme::cubic), f, fx);
  o.check(mob <= 1e-6, fmt("mobius-cos cubic %.2e <= 1e-6", mob));
  const double hat = oracle_error(Transfer(fixtures::mixed_cos(), kN), f, fx);
  o.msg << fmt("; info: mixed-zero against analytic f %.2e (input interpolation)", lin_an)
        << fmt(", mixed-cos with the positive linear scheme %.2e", hat);
}

// max |T_u'| over a fine sample
double lipschitz(const ExpandingSystem& sys, const Word& u) {
  double best = 0.0;
  for (std::size_t j = 0; j < 4096; ++j) {
    double x = j / 4096.0, d = 1.0;
    for (int l : u.letters()) {
      d *= std::fabs(sys.map(l).derivative(x));
      x = sys.map(l).apply(x);
    }
    best = std::max(best, d);
  }
  return best;
}

// 3. Cocycle, normalisation of h and the pushforward identity.
void conformality(Outcome& o) {
  for (auto [name, sys] : {std::pair{"mixed-cos", fixtures::mixed_cos()},
                           std::pair{"mobius-cos", fixtures::mobius_cos()}}) {
    Transfer T(sys, kN);
    std::mt19937_64 rng(303);
    const std::size_t l = 40;
    double cocycle = 0.0, cocycle_rel = 0.0, hint = 0.0;
    for (int t = 0; t < 20; ++t) {
      Word u = random_word(rng, 2, 4), v = random_word(rng, 2, 4);
      if (u.empty()) u = Word::parse("1");
      if (v.empty()) v = Word::parse("2");
      const Word om = random_word(rng, 2, 6) + Word::periodic(Word({static_cast<int>(rng() % 2), 1}), 40);
      const auto mu_om = quenched_conformal(T, Word(), om, l, false).measure.normalized();
      const auto mu_vom = quenched_conformal(T, Word(), v + om, l + v.size(), false).measure.normalized();
      const double l_uv = eigen_data(T, u + v, mu_om).lambda;
      const double prod = eigen_data(T, u, mu_vom).lambda * eigen_data(T, v, mu_om).lambda;
      cocycle = std::max(cocycle, std::fabs(l_uv - prod));
      cocycle_rel = std::max(cocycle_rel, std::fabs(l_uv - prod) / l_uv);
      hint = std::max(hint, std::fabs(mu_om.integrate(eigen_data(T, u, mu_om).h) - 1.0));
    }
    o.check(cocycle <= 1e-6, std::string(name) + fmt(" cocycle %.2e <= 1e-6 (rel %.1e)", cocycle, cocycle_rel));
    o.check(hint <= 1e-8, std::string(name) + fmt(" |int h - 1| %.2e <= 1e-8", hint));
    // W1 sees f o T_u, whose Lipschitz constant is Lip(T_u): the grid
    // identity holds to O(Lip(T_u)/N). 2/N is checked on |u| <= 2 and the
    // scaled bound 2 Lip(T_u)/N on |u| = 3, 4.
    const Word om = Word::periodic(Word::parse("1121"), 40);
    double push_short = 0.0, push_scaled = 0.0;
    for (std::size_t len = 1; len <= 4; ++len)
      for (const Word& u : oracle::all_words(2, len)) {
        const auto mu_u = quenched_conformal(T, u, om, l, false).measure.normalized();
        const auto mu_uom = quenched_conformal(T, Word(), u + om, l + u.size(), false).measure.normalized();
        const double w = wasserstein_euclid(mu_u, pushforward(T, u, mu_uom)) * static_cast<double>(kN);
        if (len <= 2)
          push_short = std::max(push_short, w);
        else
          push_scaled = std::max(push_scaled, w / lipschitz(sys, u));
      }
    o.check(push_short <= 2.0, std::string(name) + fmt(" pushforward |u|<=2: N*W %.3f <= 2", push_short));
    o.check(push_scaled <= 2.0, std::string(name) + fmt(" |u|=3,4: N*W/Lip(T_u) %.3f <= 2", push_scaled));
  }
}

// 4. Contraction rate, measure and function versions.
void contraction(Outcome& o) {
  Transfer T(fixtures::mixed_cos(), kN);
  ContractionOptions opt;
  opt.trials = 8;
  opt.max_length = 20;
  opt.seed = 11;
  const auto fm = fit_contraction(contraction_rate(T, opt).points, 10);
  const auto ff = fit_contraction(contraction_rate_functions(T, opt).points, 10);
  for (auto [name, fit] : {std::pair{"W-bar", fm}, std::pair{"D-bar", ff}}) {
    o.check(fit.s_hat > 0.0 && fit.s_hat < 1.0 && fit.r2 >= 0.95,
            std::string(name) + fmt(" s=%.3f r2=%.3f", fit.s_hat, fit.r2) +
                " over |v| in [" + std::to_string(fit.fit_from) + "," + std::to_string(fit.fit_to) + "]");
  }
}

// 5. Single-letter periodic eigenvalue against dense power iteration.
void classical(Outcome& o) {
  struct Case {
    const char* name;
    ExpandingSystem sys;
    double tol;
    bool exact;
  };
  for (auto& c : {Case{"mixed-zero", fixtures::mixed_zero(), 1e-8, true},
                  Case{"doubling-zero", fixtures::doubling_zero(), 1e-8, true},
                  Case{"mixed-cos", fixtures::mixed_cos(), 1e-4, false},
                  Case{"mobius-cos", fixtures::mobius_cos(), 1e-4, false},
                  Case{"doubling-cos", fixtures::doubling_cos(), 1e-4, false}}) {
    Transfer T(c.sys, kN);
    double worst = 0.0;
    for (int a = 0; a < T.alphabet_size(); ++a) {
      const Word w({a});
      const auto mu = quenched_conformal(T, Word(), Word::repeat(a, 80), 80, false).measure.normalized();
      const double lam = eigen_data(T, w, mu).lambda;
      const double ref = c.exact ? static_cast<double>(T.system().map(a).branches()) : dense_perron(T, w).value;
      worst = std::max(worst, std::fabs(lam - ref) / ref);
    }
    o.check(worst <= c.tol, std::string(c.name) + fmt(" rel %.2e <= %.0e", worst, c.tol));
  }
}

// 6. Annealed DP.
void annealed_dp(Outcome& o) {
  const std::size_t n = 256;
  double dp = 0.0;
  const auto f = GridFunction::sample(n, [](double x) { return 1.0 + 0.5 * std::sin(2 * kPi * x); });
  for (auto sys : {fixtures::mixed_zero(), fixtures::mixed_cos(), fixtures::mobius_cos()})
    for (auto env : {fixtures::markov_73(), fixtures::markov_73_nonstationary(), fixtures::bernoulli_half()}) {
      Transfer T(sys, n);
      const auto seq = annealed_sequence(T, env, f, 5);
      for (std::size_t k = 1; k <= 5; ++k) {
        const auto bf = oracle::brute_force_annealed(T, env, f, k);
        dp = std::max(dp, (value(seq[k - 1]) - bf).sup_norm() / bf.sup_norm());
      }
    }
  o.check(dp <= 1e-10, fmt("DP vs word sum, n<=5, rel %.2e <= 1e-10", dp));

  Transfer T(fixtures::mixed_cos(), kN);
  const auto g = GridFunction::sample(kN, [](double x) { return 2.0 + std::cos(2 * kPi * x); });
  const auto env = fixtures::bernoulli_half();
  const auto seq = annealed_sequence(T, env, g, 12);
  // iterate A_1 with its own rescaling and compare against the DP entry
  ScaledFunction q{g, 0.0};
  double bern = 0.0;
  for (std::size_t k = 1; k <= 12; ++k) {
    const auto s1 = annealed_apply(T, env, 1, q.f);
    q.f = s1.f;
    q.log_scale += s1.log_scale;
    const auto& a = seq[k - 1];
    const auto rescaled = a.f * std::exp(a.log_scale - q.log_scale);
    bern = std::max(bern, (rescaled - q.f).sup_norm() / q.f.sup_norm());
  }
  o.check(bern <= 1e-10, fmt("Bernoulli A_n = A_1^n, n<=12, rel %.2e <= 1e-10", bern));

  const auto mk = fixtures::markov_73();
  const auto one = GridFunction::constant(kN, 1.0);
  const auto a4 = value(annealed_apply(T, mk, 4, one));
  const auto a22 = value(annealed_apply(T, mk, 2, value(annealed_apply(T, mk, 2, one))));
  const double mism = (a4 - a22).sup_norm() / a4.sup_norm();
  o.check(mism > 1e-3, fmt("Markov A_4 vs A_2 A_2 mismatch %.3f > 1e-3", mism));
}

// 7. Annealed spectral convergence.
void annealed_spectrum(Outcome& o) {
  Transfer T(fixtures::mixed_cos(), kN);
  const auto f = GridFunction::sample(kN, [](double x) { return std::sin(2 * kPi * x) + 0.3 * std::cos(4 * kPi * x); });
  const auto r = annealed_convergence(T, fixtures::markov_73(), f, 10, 30, 4);
  o.check(r.fit.rate < 1.0 && r.fit.r2 >= 0.9,
          fmt("residual fit r=%.3f r2=%.3f (n in [10,30])", r.fit.rate, r.fit.r2));
  o.msg << fmt("; info: beta %.12g, beta(iota) %.6g", r.beta, r.beta_iota)
        << fmt(", residual(10) %.2e residual(30) %.2e", r.residual.front(), r.residual.back());
  Transfer Z(fixtures::mixed_zero(), kN);
  const double beta0 = augmented_perron_value(Z, fixtures::markov_73());
  const double exact = 1.6 + std::sqrt(0.76);
  o.check(std::fabs(beta0 - exact) <= 1e-8, fmt("phi=0 beta %.15g vs 1.6+sqrt(.76), err %.1e <= 1e-8", beta0, std::fabs(beta0 - exact)));
}

// 8. Annealed decay of correlations by Monte Carlo.
void annealed_decay_check(Outcome& o) {
  const auto f = GridFunction::sample(kN, [](double x) { return std::cos(2 * kPi * x); });
  const auto g = GridFunction::sample(kN, [](double x) { return std::cos(2 * kPi * x) + 0.5 * std::sin(2 * kPi * x); });
  DecayOptions opt;
  opt.samples = 1000;
  opt.n_hi = 12;
  opt.seed = 7;
  const auto r = annealed_decay(Transfer(fixtures::mobius_cos(), kN), fixtures::markov_73(), f, g, opt);
  o.check(r.fitted && r.fit.rate < 1.0,
          fmt("mobius-cos rate %.3f r2=%.4f", r.fit.rate, r.fit.r2) + " on " + std::to_string(r.fit_points) +
              " points above 2 SE, " + std::to_string(r.strata) + " strata");
  const auto z = annealed_decay(Transfer(fixtures::mixed_zero(), kN), fixtures::markov_73(), f, g, opt);
  double worst = 0.0;
  bool within = true;
  for (std::size_t i = 0; i < z.discrepancy.size(); ++i) {
    worst = std::max(worst, std::fabs(z.discrepancy[i]));
    within = within && std::fabs(z.discrepancy[i]) <= std::max(3.0 * z.se[i], 1e-12);
  }
  o.check(within && !z.fitted, fmt("phi=0 control max |D| %.1e within 3 SE (or 1e-12)", worst));
}

// 9. Martingale decomposition ingredients and CLT.
void asip(Outcome& o) {
  Transfer T(fixtures::doubling_cos(), kN);
  const auto f = GridFunction::sample(kN, [](double x) { return std::cos(2 * kPi * x); });
  const auto d = build_decomposition(T, Word::repeat(0, 260), f, 200, 40);
  std::vector<double> pts;
  for (int i = 0; i < 16; ++i) pts.push_back((i + 0.37) / 16.0);
  const double tel = telescoping_error(T, d, pts);
  o.check(tel <= 1e-10, fmt("telescoping %.2e <= 1e-10", tel));
  double disc = 0.0, cont = 0.0;
  for (int m = 1; m <= 10; ++m) {
    const auto psi = [m](double x) { return m % 2 ? std::cos(2 * kPi * m * x) : std::sin(2 * kPi * m * x) + 0.1 * m; };
    for (std::size_t n : {5, 50, 150}) {
      const auto r = reverse_martingale_check(T, d, n, psi);
      disc = std::max(disc, r.discrete);
      cont = std::max(cont, r.continuous);
    }
  }
  o.check(disc <= 1e-6, fmt("orthogonality (10 psi, grid conditional expectation) %.1e <= 1e-6", disc));
  {
    // exact-map form: psi evaluated at T(y); its residual is interpolation
    // error and shrinks by ~4 per grid doubling
    Transfer H(fixtures::doubling_cos(), kN / 2);
    const auto dh = build_decomposition(H, Word::repeat(0, 260), GridFunction::sample(kN / 2, [](double x) { return std::cos(2 * kPi * x); }), 200, 40);
    double ch = 0.0;
    for (int m = 1; m <= 10; ++m) {
      const auto psi = [m](double x) { return m % 2 ? std::cos(2 * kPi * m * x) : std::sin(2 * kPi * m * x) + 0.1 * m; };
      for (std::size_t n : {5, 50, 150}) ch = std::max(ch, reverse_martingale_check(H, dh, n, psi).continuous);
    }
    o.msg << fmt("; info: exact-map form %.1e at N=1024, ratio to N=512 %.2f", cont, ch / cont);
  }
  double first = 0.0, second = 0.0;
  for (std::size_t k = 0; k < d.h_n.size(); ++k)
    (k <= 100 ? first : second) = std::max(k <= 100 ? first : second, d.h_n[k].sup_norm());
  o.check(std::isfinite(second) && second <= 1.5 * first + 1e-12,
          fmt("sup|h_n| n<=100 %.3f, n in (100,200] %.3f", first, second));
  const auto clt = quenched_clt_check(T, d, 200, 10000, 2024);
  o.check(clt.status == "ok" && clt.ks <= 0.05, fmt("CLT n=200 KS %.4f <= 0.05 (var ratio %.3f)", clt.ks, clt.variance_ratio));
}

// 10. Bowen root and pressure bounds.
void bowen(Outcome& o) {
  const double d0 = bowen_root(fixtures::cantor_third(256)).delta0;
  const double exact = std::log(2.0) / std::log(3.0);
  o.check(std::fabs(d0 - exact) <= 1e-4, fmt("Cantor delta0 %.10f, err %.1e <= 1e-4", d0, std::fabs(d0 - exact)));
  const double dm = bowen_root(fixtures::mixture_4_8(256)).delta0;
  const double ref = oracle::bisect([](double d) { return std::log(0.5 * (2 * std::pow(4.0, -d) + 4 * std::pow(8.0, -d))); }, 0.0, 4.0);
  o.check(std::fabs(dm - ref) <= 1e-6, fmt("mixture delta0 %.10f vs scalar root, err %.1e <= 1e-6", dm, std::fabs(dm - ref)));
  for (auto [name, ifs] : {std::pair{"mixture-4-8", fixtures::mixture_4_8(256)},
                           std::pair{"cantor-bent", fixtures::cantor_bent(256)}}) {
    const double lo = -std::log(ifs.eta_plus()), hi = -std::log(ifs.eta_minus());
    std::size_t bad = 0;
    double prev = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double delta = 2.0 * i / 49.0;
      const double P = annealed_pressure(ifs, delta).P;
      if (i > 0) {
        const double drop = prev - P, step = 2.0 / 49.0;
        if (!(drop > 0.0 && drop >= lo * step - 1e-8 && drop <= hi * step + 1e-8)) ++bad;
      }
      prev = P;
    }
    o.check(bad == 0, std::string(name) + " monotone + Lipschitz on 50 deltas, " + std::to_string(bad) + " violations");
  }
}

// 11. Equidistribution of the annealed dual and the pressure limit.
void equidistribution_check(Outcome& o) {
  Transfer T(fixtures::mixed_zero(), kN);
  std::vector<std::size_t> ns;
  for (std::size_t n = 2; n <= 30; n += 2) ns.push_back(n);
  const auto mc = fixtures::mixed_cos();
  Transfer C(mc, kN);
  const auto e = equidistribution(C, fixtures::bernoulli_half(), 0, kN / 3, ns);
  o.check(e.fit.rate < 1.0 && e.fit.r2 >= 0.9, fmt("mixed-cos W(nu^x1, nu^x2) rate %.3f r2=%.3f", e.fit.rate, e.fit.r2));
  const auto z = equidistribution(T, fixtures::bernoulli_half(), 0, kN / 3, {30});
  const double p = z.pressure.back();
  o.check(std::fabs(p - std::log(2.5)) <= 1e-3, fmt("phi=0 pressure at n=30 %.12f vs log(5/2), err %.1e <= 1e-3", p, std::fabs(p - std::log(2.5))));
}

// 12. Boundary probes.
void boundary(Outcome& o) {
  Transfer T(fixtures::mixed_cos(), kN);
  ElementCache cache(T);
  std::vector<Word> pool;
  for (std::size_t len = 1; len <= 4; ++len)
    for (const Word& w : oracle::all_words(2, len)) pool.push_back(w);
  std::mt19937_64 rng(12);
  std::vector<std::array<std::size_t, 3>> triples(1000);
  for (auto& t : triples)
    for (auto& i : t) i = rng() % pool.size();
  const auto dg = check_metric_axioms(pool, triples, [&](const Word& x, const Word& y) { return cache.distance(x, y); }, 1e-12);
  const auto dw = check_metric_axioms(pool, triples, word_metric, 1e-15);
  o.check(dg.failures == 0 && dw.failures == 0,
          "metric axioms on 1000 triples: d_G " + std::to_string(dg.failures) + " failures, d_W* " +
              std::to_string(dw.failures) + fmt(" (worst triangle excess %.1e)", dg.worst_triangle));
  for (auto [l, r] : {std::pair{"12", "12"}, std::pair{"21", "21"}}) {
    const auto p = cauchy_probe(cache, nested_words(Word::parse(l), Word::parse("1"), Word::parse(r), 1, 6));
    o.check(p.is_cauchy && p.fit.rate < 1.0,
            std::string("(") + l + ")^n 1 (" + r + ")^n" + fmt(" Cauchy, gap rate %.3f r2=%.3f", p.fit.rate, p.fit.r2));
  }
  const auto h = holder_regression(cache, pool);
  o.check(h.exponent > 0.0, fmt("Holder exponent %.3f > 0 (r2 %.2f)", h.exponent, h.r2) + " on " + std::to_string(h.pairs) + " pairs");
  Transfer K(fixtures::commuting_zero(), kN);
  ElementCache kc(K);
  double worst = 0.0;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) worst = std::max(worst, kc.wbar(pool[i], pool[j]));
  o.check(worst <= 1.0 / kN, fmt("commuting max W-bar %.1e <= 1/N", worst));
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    void (*run)(Outcome&);
  };
  const std::vector<Criterion> all = {
      {1, "normalization & composition", 10, normalization},
      {2, "oracle equivalence", 30, oracle_equivalence},
      {3, "conformality", 60, conformality},
      {4, "contraction", 300, contraction},
      {5, "classical consistency", 60, classical},
      {6, "annealed DP", 60, annealed_dp},
      {7, "annealed spectrum", 300, annealed_spectrum},
      {8, "annealed decay", 600, annealed_decay_check},
      {9, "ASIP ingredients", 600, asip},
      {10, "Bowen dimension", 120, bowen},
      {11, "equidistribution", 120, equidistribution_check},
      {12, "boundary", 300, boundary},
  };
  std::ofstream report("acceptance_report.txt");
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt <= c.budget;
    const bool ok = o.pass && in_time;
    if (!ok) ++failed;
    char head[160];
    std::snprintf(head, sizeof head, "%s [%d] %s: ", ok ? "PASS" : "FAIL", c.id, c.name);
    char tail[96];
    std::snprintf(tail, sizeof tail, "; time %.1fs / %.0fs%s", dt, c.budget, in_time ? "" : " [over budget]");
    const std::string line = head + o.msg.str() + tail;
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    report << line << '\n';
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  report << all.size() - static_cast<std::size_t>(failed) << "/" << all.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
