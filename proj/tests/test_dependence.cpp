#include <doctest.h>

#include <cmath>

#include "tailmix/dependence.hpp"
#include "tailmix/errors.hpp"

using namespace tailmix;

TEST_CASE("excess limit rates") {
  FunctionalModel ell = make_elliptical(0.5);
  ExcessLimit lim = excess_limit_rates(ell, 1.0);
  double alpha = 1.0 / std::sqrt(0.75);
  CHECK(lim.alpha == doctest::Approx(alpha).epsilon(1e-10));
  CHECK(lim.c == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(lim.rate_x == doctest::Approx(alpha / 2.0).epsilon(1e-9));
  CHECK(lim.rate_y == doctest::Approx(alpha / 2.0).epsilon(1e-9));
  CHECK(lim.rate_x ==
        doctest::Approx((1.0 - 0.5) / (alpha * (1.0 - 0.25))).epsilon(1e-9));

  FunctionalModel lp1 = make_lp(1.0, 1.0, 1.0);
  ExcessLimit lim1 = excess_limit_rates(lp1, 1.0);
  CHECK(lim1.alpha == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(lim1.rate_x == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(lim1.rate_y == doctest::Approx(1.0).epsilon(1e-9));

  // a = 1 with c = 1 forces equal rates (to the numeric accuracy of c).
  CHECK(lim.rate_x == doctest::Approx(lim.rate_y).epsilon(1e-9));
}

TEST_CASE("excess limit survival") {
  ExcessLimit lim{1.0, 2.0, 1.0, 1.0, 1.0, ""};
  CHECK(excess_limit_survival(lim, 0.0, 0.0) == 1.0);
  CHECK(excess_limit_survival(lim, 1.0, 1.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(excess_limit_survival(lim, 0.7, 1.3) ==
        doctest::Approx(excess_limit_survival(lim, 0.7, 0.0) *
                        excess_limit_survival(lim, 0.0, 1.3))
            .epsilon(1e-14));
  CHECK_THROWS_AS(excess_limit_survival(lim, -1.0, 0.0), InputError);
}

TEST_CASE("excess limit under the angular condition") {
  MinDominated md(1.0);
  AngularExcessLimit lim(md, 1.0);
  CHECK(lim.survival(0.0, 0.0) == 1.0);
  // One-dimensional collapse: survival e^{-s} for s >= t.
  CHECK(lim.survival(1.0, 0.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(lim.survival(2.0, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));

  Fgm fgm(0.5, 1.0, 1.0);
  AngularExcessLimit flim(fgm, 1.0);
  CHECK(flim.survival(1.0, 1.0) ==
        doctest::Approx(j_integral(fgm, 1.0, 1.0, 1.0) / 2.0).epsilon(1e-10));
  // Not a product law.
  CHECK(std::fabs(flim.survival(1.0, 1.0) -
                  flim.survival(1.0, 0.0) * flim.survival(0.0, 1.0)) > 1e-3);
}

TEST_CASE("limit S function") {
  CHECK(fgm_s_limit(1.0, 1.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fgm_s_limit(1.0, 1.0, 0.3, 1.7) == doctest::Approx(1.0).epsilon(1e-10));
  // gamma1 = gamma2 = 0 reduces to min(x,y) on the unit box.
  CHECK(fgm_s_limit(0.4, 0.7, 0.0, 0.0) == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(fgm_s_limit(0.9, 0.2, 0.0, 0.0) == doctest::Approx(0.2).epsilon(1e-10));
  CHECK_THROWS_AS(fgm_s_limit(0.0, 1.0, 1.0, 1.0), InputError);
}

TEST_CASE("residual index closed forms") {
  ChiLaw chi2(2);
  FunctionalModel ell0 = make_elliptical(0.0);
  FunctionalModel ell5 = make_elliptical(0.5);
  CHECK(residual_index_functional(ell0, chi2, 1.0).eta ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(residual_index_functional(ell5, chi2, 1.0).eta ==
        doctest::Approx(0.75).epsilon(1e-10));

  LogNormalLaw ln(0.0, 1.0);
  CHECK(residual_index_functional(ell5, ln, 1.0).eta == 1.0);
}

TEST_CASE("empirical eta on the circular model is exact") {
  // Independent standard normal components: S_u(1,1) = u^-2 exactly, so the
  // regression slope is -2 and eta = 1/2 up to quadrature noise.
  ChiLaw chi2(2);
  FunctionalModel circle = make_elliptical(0.0);
  OracleConfig cfg;
  cfg.threads = 2;
  std::vector<double> grid{1e2, 1e3, 1e4, 1e5, 1e6};
  ResidualIndex r = empirical_eta(chi2, circle, grid, cfg);
  CHECK(r.eta == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(r.points_used >= 3);
}

TEST_CASE("tail dependence trends") {
  ChiLaw chi2(2);
  OracleConfig cfg;
  cfg.threads = 2;

  MinDominated md(1.0);
  MixtureView vm = make_view(md);
  double l_md = tail_dependence_l(chi2, vm, 1.0, 1.0, 100.0, cfg);
  CHECK(l_md > 0.5);

  Fgm fgm(0.5, 1.0, 1.0);
  MixtureView vf = make_view(fgm);
  double l1 = tail_dependence_l(chi2, vf, 1.0, 1.0, 100.0, cfg);
  double l2 = tail_dependence_l(chi2, vf, 1.0, 1.0, 1000.0, cfg);
  CHECK(l2 < l1);

  CHECK_THROWS_AS(tail_dependence_l(chi2, vf, 0.0, 1.0, 100.0, cfg), InputError);
}

TEST_CASE("empirical excesses at moderate cost") {
  ChiLaw chi2(2);
  FunctionalModel ell = make_elliptical(0.5);
  ExcessConfig cfg;
  cfg.n_proposals = 400000;
  cfg.threads = 2;
  ExcessEmpirical e = excess_empirical(chi2, ell, 1.0, 8.0, cfg);
  CHECK(e.n_accepted >= 1000);
  CHECK(e.ks_x <= 0.05);
  CHECK(e.ks_y <= 0.05);
  CHECK(std::fabs(e.corr) <= 0.05);

  // Too few exceedances must raise a numeric error asking for more samples.
  ExcessConfig small;
  small.n_proposals = 2000;
  small.chunks = 2;
  CHECK_THROWS_AS(excess_empirical(chi2, ell, 1.0, 8.0, small), NumericError);
}

TEST_CASE("eta regression input validation") {
  ChiLaw chi2(2);
  FunctionalModel ell = make_elliptical(0.5);
  OracleConfig cfg;
  std::vector<double> tiny{1e2, 1e3};
  CHECK_THROWS_AS(empirical_eta(chi2, ell, tiny, cfg), InputError);
}
