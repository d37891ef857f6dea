#include <doctest.h>

#include <cmath>

#include "tailmix/errors.hpp"
#include "tailmix/quadrature.hpp"

using namespace tailmix;

TEST_CASE("smooth integrand") {
  auto r = quad::integrate([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("kinked integrand with breakpoints") {
  quad::Options opt;
  opt.breakpoints = {1.0 / 3.0};
  auto r = quad::integrate([](double x) { return std::fabs(x - 1.0 / 3.0); }, 0.0, 1.0, opt);
  // int |x-1/3| over [0,1] = (1/3)^2/2 + (2/3)^2/2
  CHECK(r.value == doctest::Approx(1.0 / 18.0 + 2.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("integrable endpoint singularity") {
  auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                           {1e-12, 1e-10, {}, 4096});
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("tail integration with remainder bound") {
  auto r = quad::integrate_tail([](double s) { return std::exp(-s); }, 0.0,
                                [](double s) { return std::exp(-s); }, 1e-12);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-11));

  // Unreachable truncation bound must throw.
  CHECK_THROWS_AS(quad::integrate_tail([](double) { return 0.0; }, 0.0,
                                       [](double) { return 0.5; }, 1e-12, {}, 16.0, 64.0),
                  NumericError);
}

TEST_CASE("bad interval rejected") {
  CHECK_THROWS_AS(quad::integrate([](double) { return 1.0; }, 1.0, 0.0), InputError);
}
