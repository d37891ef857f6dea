#include <doctest.h>

#include <cmath>

#include "tailmix/angular.hpp"
#include "tailmix/errors.hpp"
#include "tailmix/rng.hpp"

using namespace tailmix;

TEST_CASE("joint tails, closed cases") {
  MinDominated md(1.0);
  CHECK(md.joint_tail(0.9, 0.9) == doctest::Approx(0.1).epsilon(1e-14));

  Fgm indep(0.0, 1.0, 1.0);
  CHECK(indep.joint_tail(0.9, 0.8) == doctest::Approx(0.02).epsilon(1e-14));

  CHECK_THROWS_AS(md.joint_tail(1.0, 0.5), InputError);
}

TEST_CASE("linear combination joint tail vs Monte Carlo frequency") {
  LinearCombo lc(0.5, 0.5, 1.0, 1.0);
  double p = lc.joint_tail(0.9, 0.9);
  // Closed check: P(U1>0.7,U2>0.7) = 2*0.3^2 in the exact-power region.
  CHECK(lc.joint_tail(0.7, 0.7) == doctest::Approx(2.0 * 0.09).epsilon(1e-10));

  const long n = 1000000;
  CounterRng rng(17);
  long hits = 0;
  for (long i = 0; i < n; ++i) {
    auto [u1, u2] = lc.sample(rng);
    if (u1 > 0.9 && u2 > 0.9) ++hits;
  }
  double phat = static_cast<double>(hits) / n;
  double se = std::sqrt(phat * (1.0 - phat) / n);
  CHECK(std::fabs(phat - p) < 3.0 * se);
}

TEST_CASE("xi limit functions") {
  Fgm fgm(0.5, 1.0, 1.0);
  CHECK(fgm.xi(1.0, 2.0, 1.0, 0.0) == doctest::Approx(2.0).epsilon(1e-14));

  MinDominated md(1.0);
  LinearCombo lc(0.5, 0.5, 1.0, 1.0);
  for (double s : {0.2, 0.5}) {
    CHECK(fgm.xi(1.0, s, 0.7, 0.6) == 0.0);  // s <= max(delta, eta)
    CHECK(md.xi(1.0, s, 0.7, 0.6) == 0.0);
    CHECK(lc.xi(1.0, s, 0.7, 0.6) == 0.0);
  }

  // xi_tilde(s,0,0) = gamma2 * C * s^2 exactly, C = 2 at these parameters.
  for (double s : {0.05, 0.3, 1.0}) {
    CHECK(lc.xi_tilde(s, 0.0, 0.0) == doctest::Approx(2.0 * s * s).epsilon(1e-9));
  }
  CHECK(lc.c_constant() == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(lc.normalizer() == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("limit data") {
  Fgm fgm(0.5, 1.0, 1.0);
  LimitData l1 = limit_data(fgm, 1.0);
  CHECK(l1.gamma == 2.0);
  CHECK(l1.La(0.3) == doctest::Approx(1.0 + 0.5 * 0.09).epsilon(1e-14));

  MinDominated md(1.0);
  LimitData l2 = limit_data(md, 1.0);
  CHECK(l2.gamma == 1.0);
  CHECK(l2.La(0.2) == 1.0);

  LimitData l3 = limit_data(fgm, 0.5);
  CHECK(l3.gamma == 1.0);
  // L_a(s) tends to the survival of U2 at level a.
  CHECK(l3.La(1e-9) == doctest::Approx(0.5).epsilon(1e-6));

  LinearCombo lc(0.5, 0.5, 1.0, 1.0);
  CHECK_THROWS_AS(limit_data(lc, 0.5), InputError);
}

TEST_CASE("c constant") {
  CHECK(c_constant(1.0, 1.0, 0.5, 0.5) == doctest::Approx(2.0).epsilon(1e-10));
  // gamma1 = 0 collapses the integrand to t^{gamma2-1}.
  for (double g2 : {0.5, 1.0, 2.0}) {
    for (double l2 : {0.3, 0.5}) {
      CHECK(c_constant(0.0, g2, 0.6, l2) ==
            doctest::Approx(std::pow(1.0 - l2, -g2) / g2).epsilon(1e-9));
    }
  }
  // Consistency with the small-s limit of xi_tilde at unequal lambdas.
  LinearCombo lc(0.7, 0.3, 1.0, 1.0);
  double c = c_constant(1.0, 1.0, 0.7, 0.3);
  double s = 1e-3;
  CHECK(lc.xi_tilde(s, 0.0, 0.0) / (s * s) == doctest::Approx(c).epsilon(1e-6));

  CHECK_THROWS_AS(c_constant(1.0, 1.0, 0.3, 0.7), InputError);
}

TEST_CASE("samplers") {
  // FGM at K=0 is independence: correlation of 1e6 draws is 0 within 3 SE.
  Fgm indep(0.0, 1.0, 1.0);
  const long n = 1000000;
  CounterRng rng(31);
  double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0;
  for (long i = 0; i < n; ++i) {
    auto [u1, u2] = indep.sample(rng);
    s1 += u1;
    s2 += u2;
    s11 += u1 * u1;
    s22 += u2 * u2;
    s12 += u1 * u2;
  }
  double m1 = s1 / n, m2 = s2 / n;
  double corr = (s12 / n - m1 * m2) /
                std::sqrt((s11 / n - m1 * m1) * (s22 / n - m2 * m2));
  CHECK(std::fabs(corr) < 3.0 / std::sqrt(static_cast<double>(n)));

  // Linear combination: E[U1] = lambda1 E[S1] + (1-lambda1) E[S2], E[S_i] = 1/(gamma_i+1).
  LinearCombo lc(0.5, 0.5, 1.0, 1.0);
  CounterRng rng2(32);
  double sum = 0, sum2 = 0;
  for (long i = 0; i < n; ++i) {
    auto [u1, u2] = lc.sample(rng2);
    (void)u2;
    sum += u1;
    sum2 += u1 * u1;
  }
  double mean = sum / n;
  double se = std::sqrt((sum2 / n - mean * mean) / n);
  CHECK(std::fabs(mean - 0.5) < 3.0 * se);

  // MinDominated ordering holds almost surely.
  MinDominated md(1.0);
  CounterRng rng3(33);
  for (int i = 0; i < 10000; ++i) {
    auto [u1, u2] = md.sample(rng3);
    CHECK(u2 >= u1);
  }
}

TEST_CASE("fgm sampler matches its copula survival") {
  // The sampling law has survival B1 B2 (1 + K G1 G2); check an interior box.
  Fgm fgm(0.5, 1.0, 1.0);
  double x = 0.7, y = 0.6;
  double b1 = 1.0 - x, b2 = 1.0 - y;
  double target = b1 * b2 * (1.0 + 0.5 * x * y);
  const long n = 1000000;
  CounterRng rng(41);
  long hits = 0;
  for (long i = 0; i < n; ++i) {
    auto [u1, u2] = fgm.sample(rng);
    if (u1 > x && u2 > y) ++hits;
  }
  double phat = static_cast<double>(hits) / n;
  double se = std::sqrt(phat * (1.0 - phat) / n);
  CHECK(std::fabs(phat - target) < 3.0 * se);
}

TEST_CASE("degenerate pair from a zero exponent") {
  MinDominated degenerate(0.0);
  CHECK(degenerate.joint_tail(0.99, 0.99) == 1.0);
  CounterRng rng(4);
  auto [u1, u2] = degenerate.sample(rng);
  CHECK(u1 == 1.0);
  CHECK(u2 == 1.0);
}
