#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tailmix/errors.hpp"
#include "tailmix/functional.hpp"
#include "tailmix/quadrature.hpp"
#include "tailmix/rng.hpp"

using namespace tailmix;

TEST_CASE("critical direction, closed cases") {
  FunctionalModel lp2 = make_lp(2.0, 0.5, 0.5);
  CriticalData c1 = lp2.solve_alpha(1.0);
  CHECK(c1.alpha == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(c1.c == doctest::Approx(1.0).epsilon(1e-10));

  FunctionalModel ell = make_elliptical(0.5);
  CriticalData c2 = ell.solve_alpha(0.8);
  CHECK(c2.alpha == doctest::Approx(std::sqrt(0.84 / 0.75)).epsilon(1e-12));
  CHECK(c2.c == doctest::Approx(0.5).epsilon(1e-10));

  FunctionalModel circle = make_elliptical(0.0);
  CriticalData c3 = circle.solve_alpha(1.0);
  CHECK(c3.alpha == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(c3.c == doctest::Approx(1.0).epsilon(1e-10));

  // Root property and window sanity.
  CHECK(circle.z(1.0 / c3.alpha) == doctest::Approx(1.0 / c3.alpha).epsilon(1e-12));
  CHECK(c3.eps_window > 0.0);
}

TEST_CASE("critical direction errors") {
  FunctionalModel steep = make_elliptical(0.9);
  CHECK_THROWS_AS(steep.solve_alpha(0.5), InputError);  // a <= rho

  // A bump pushing z above a/alpha on (1/alpha, 1] violates the side condition.
  FunctionalModel bad(
      0.0,
      [](double x) {
        return std::sqrt(std::max(0.0, 1.0 - x * x)) +
               0.5 * std::exp(-std::pow((x - 0.95) / 0.02, 2.0));
      },
      std::make_shared<ArcsineW>(), SignProbs::symmetric(), "bad_side");
  try {
    bad.solve_alpha(1.0);
    CHECK_MESSAGE(false, "expected a side-condition failure");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("side condition") != std::string::npos);
  }
}

TEST_CASE("w densities") {
  FunctionalModel ell = make_elliptical(0.0);
  CHECK(ell.w_density_at(1e-8) == doctest::Approx(2.0 / M_PI).epsilon(1e-8));
  CHECK_THROWS_AS(ell.w_density_at(0.0), InputError);
  CHECK_THROWS_AS(ell.w_density_at(1.0), InputError);

  FunctionalModel lp1 = make_lp(1.0, 1.0, 1.0);
  CHECK(lp1.w_density_at(0.3) == doctest::Approx(1.0).epsilon(1e-12));

  // Mass normalization via quadrature.
  auto f = [&](double x) { return ell.w_density_at(x); };
  auto r = quad::integrate(f, 1e-12, 1.0 - 1e-12, {1e-12, 1e-9, {}, 4096});
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("joint tail given the radius") {
  FunctionalModel circle = make_elliptical(0.0);
  double v = 2.0;  // any positive normalization; delta = eta = 0 here
  CHECK(circle.joint_tail_given_r(1.0, 1.0, 0.9, 0.0, 0.0, v) == 0.0);  // r <= x

  // W in (1/2, sqrt(3)/2) on the circle: (2/pi)(pi/3 - pi/6)/4 = 1/12.
  CHECK(circle.joint_tail_given_r(1.0, 1.0, 2.0, 0.0, 0.0, v) ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-12));

  FunctionalModel lp1 = make_lp(1.0, 1.0, 1.0);
  CHECK(lp1.joint_tail_given_r(1.0, 1.0, 4.0, 0.0, 0.0, v) ==
        doctest::Approx(0.25 * 0.5).epsilon(1e-12));
}

TEST_CASE("angular joint survival covers the far-threshold branches") {
  // At low thresholds the (+,-) branch of an elliptical model activates.
  FunctionalModel ell = make_elliptical(0.5);
  double t1 = 0.1, t2 = 0.1;
  double direct = ell.angular_joint_survival(t1, t2);
  // Reference by sign-event Monte Carlo.
  CounterRng rng(3);
  const long n = 2000000;
  long hits = 0;
  for (long i = 0; i < n; ++i) {
    auto [u1, u2] = ell.sample(rng);
    if (u1 > t1 && u2 > t2) ++hits;
  }
  double phat = static_cast<double>(hits) / n;
  double se = std::sqrt(phat * (1.0 - phat) / n);
  CHECK(std::fabs(phat - direct) < 3.0 * se);
}

TEST_CASE("pair sampler") {
  FunctionalModel circle = make_elliptical(0.0);
  CounterRng rng(5);
  for (int i = 0; i < 10000; ++i) {
    auto [u1, u2] = circle.sample(rng);
    CHECK(u1 * u1 + u2 * u2 == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Elliptical correlation: corr(U1,U2) = rho (moments E W^2 = 1/2 cancel).
  FunctionalModel ell = make_elliptical(0.5);
  const long n = 1000000;
  CounterRng rng2(6);
  double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0;
  for (long i = 0; i < n; ++i) {
    auto [u1, u2] = ell.sample(rng2);
    s1 += u1;
    s2 += u2;
    s11 += u1 * u1;
    s22 += u2 * u2;
    s12 += u1 * u2;
  }
  double m1 = s1 / n, m2 = s2 / n;
  double corr =
      (s12 / n - m1 * m2) / std::sqrt((s11 / n - m1 * m1) * (s22 / n - m2 * m2));
  CHECK(std::fabs(corr - 0.5) < 3.0e-3);

  // P(U1 > 0) = P(I1 = +1).
  FunctionalModel lp2 = make_lp(2.0, 0.5, 0.5);
  CounterRng rng3(7);
  long pos = 0;
  for (long i = 0; i < n; ++i)
    if (lp2.sample(rng3).first > 0.0) ++pos;
  double phat = static_cast<double>(pos) / n;
  CHECK(std::fabs(phat - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("singular power W") {
  double m = 1.0 / std::sqrt(2.0);
  SingularPowerW w(m, 0.09, 0.5, 0.3);

  // cdf/quantile roundtrip across all pieces.
  for (double p : {0.05, 0.3, 0.5, 0.7, 0.95}) {
    CHECK(w.cdf(w.quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  // Pure-power concentration: P(W - m in (K1 u, K2 u)) = L * u^kappa exactly.
  double k1 = -1.0 / std::sqrt(2.0), k2 = 1.0 / std::sqrt(2.0);
  double L = w.concentration_factor(k1, k2);
  for (double u : {1e-3, 1e-2, 0.1}) {
    double mass = w.cdf(m + k2 * u) - w.cdf(m + k1 * u);
    CHECK(mass == doctest::Approx(L * std::sqrt(u)).epsilon(1e-12));
  }
  CHECK_FALSE(w.continuous_density());
}

TEST_CASE("u2 endpoints") {
  CHECK(make_elliptical(0.5).u2_sup_joint() == 1.0);
  CHECK(make_elliptical(-0.4).u2_sup() == 1.0);
  CHECK(make_lp(2.0, 0.5, 0.5).u2_sup_joint() == 1.0);
}

TEST_CASE("sign probabilities validated") {
  CHECK_THROWS_AS(FunctionalModel(0.0, [](double) { return 0.5; },
                                  std::make_shared<ArcsineW>(), SignProbs{0.5, 0.5, 0.25, -0.25},
                                  "bad"),
                  InputError);
}
