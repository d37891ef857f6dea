#ifndef TAILMIX_ASYMPTOTICS_HPP
#define TAILMIX_ASYMPTOTICS_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tailmix/angular.hpp"
#include "tailmix/functional.hpp"
#include "tailmix/radial.hpp"

namespace tailmix {

enum class Method {
  angular,      // first-order expansion under the angular limit condition
  functional,   // local expansion at the critical direction
  elliptical_closed,
  lp_closed,
  marginal,
  quadrature,
  monte_carlo,
};

const char* method_name(Method m);

// A tail probability kept on log scale with the factors it was assembled
// from, so estimates survive underflow and stay auditable.
struct TailEstimate {
  double log_value = 0.0;  // natural log
  Method method = Method::quadrature;
  std::optional<double> rel_error;  // standard error or quadrature bound, relative
  std::vector<std::pair<std::string, double>> log_components;

  double value() const;
  double log10_value() const;
  // Sum of log components; must reproduce log_value to 1e-12.
  double component_sum() const;
};

TailEstimate make_estimate(Method m, std::vector<std::pair<std::string, double>> comps,
                           std::optional<double> rel_error = std::nullopt);

// J_{delta,eta} = int_delta^inf xi(a, s, delta, eta) exp(-s) ds.
// delta >= 0; eta may be negative (shift identity).  Relative tolerance 1e-12.
double j_integral(const AngularModel& model, double a, double delta, double eta);

// J * L_a(1/v(x)) * v(x)^(-gamma) * survival(x).
TailEstimate angular_tail_approx(const RadialLaw& radial, const AngularModel& model,
                                 double a, double delta, double eta, double x);

// Gamma(gamma+1) * L(1/v(x)) * v(x)^(-gamma) * survival(x): the marginal tail
// of R*U1 when P(U1 > 1-s) = s^gamma L(s).
TailEstimate marginal_tail_asymptotic(const RadialLaw& radial, double gamma,
                                      const std::function<double(double)>& L, double x);

// pp * Gamma(gamma_a+1) * L(1/v(alpha x)) * v(alpha x)^(-gamma_a) * survival(alpha x).
// The two-argument form requires a W density continuous at 1/alpha, in which
// case gamma_a = 1 and L = (c a + 1)/alpha * h(1/alpha); the overload takes a
// caller-supplied concentration pair (gamma_a, L) instead.
TailEstimate functional_tail_approx(const RadialLaw& radial, const FunctionalModel& model,
                                    double a, double x);
TailEstimate functional_tail_approx(const RadialLaw& radial, const FunctionalModel& model,
                                    const CriticalData& crit, double x);
TailEstimate functional_tail_approx(const RadialLaw& radial, const FunctionalModel& model,
                                    const CriticalData& crit, double x, double gamma_a,
                                    const std::function<double(double)>& L_k1k2);

// Density case with excess shifts delta, eta (thresholds scaled by v(alpha x)):
// pp * h(1/alpha)/alpha * (ca+1) * exp(-(ca eta + delta)/(ca+1))
//    * survival(alpha x) / v(alpha x).
TailEstimate functional_excess_approx(const RadialLaw& radial, const FunctionalModel& model,
                                      double a, double delta, double eta, double x);
TailEstimate functional_excess_approx(const RadialLaw& radial, const FunctionalModel& model,
                                      const CriticalData& crit, double delta, double eta,
                                      double x);

// alpha^2 (1-rho^2)^{3/2} / (2 pi (1-a rho)(a-rho)) * survival(alpha x)/v(alpha x),
// the closed elliptical form (symmetric signs, pp = 1/4).  Requires a in (rho, 1].
TailEstimate elliptical_closed_form(double rho, double a, const RadialLaw& radial, double x);

// pp * alpha^(p-2) * h(1/alpha) * exp(-(delta + a^p eta)/(1+a^p))
//    * survival(alpha x) / (x w(alpha x)) with alpha = (1+a^p)^{1/p}.
TailEstimate lp_closed_form(const RadialLaw& radial, const FunctionalModel& lp_model,
                            double a, double delta, double eta, double x);

enum class Component { X, Y };

// Marginal tail of X = R I1 W or Y = R(rho I1 W + I2 z*(W)) with the
// probability factors P(W > 1-1/v(x)), P(z(W) > 1-1/v(x)) evaluated exactly.
// Requires rho >= 0; the Y coefficient is P(I1=I2=1) for rho > 0 (needs
// sup z* < 1) and P(I2=1) for rho = 0.
TailEstimate functional_marginal_approx(const RadialLaw& radial, const FunctionalModel& model,
                                        Component which, double x);

}  // namespace tailmix

#endif
