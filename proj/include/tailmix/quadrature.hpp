#ifndef TAILMIX_QUADRATURE_HPP
#define TAILMIX_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace tailmix::quad {

struct Result {
  double value;
  double abs_error;
};

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  // Interior points where the integrand has kinks or integrable
  // singularities; used as panel boundaries.
  std::vector<double> breakpoints{};
  std::size_t workspace = 4096;
};

// Adaptive integration of f over [lo, hi].  Throws NumericError carrying the
// achieved error bound when the requested tolerance cannot be met.
Result integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Options& opt = {});

// Integrate f over [lo, inf) where `remainder(s)` bounds |int_s^inf f|.
// Proceeds in blocks of width `block` until the remainder bound drops below
// rel_tol * |accumulated|.
Result integrate_tail(const std::function<double(double)>& f, double lo,
                      const std::function<double(double)>& remainder,
                      double rel_tol, const std::vector<double>& breakpoints = {},
                      double block = 16.0, double s_cap = 4096.0);

}  // namespace tailmix::quad

#endif
