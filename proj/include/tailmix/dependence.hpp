#ifndef TAILMIX_DEPENDENCE_HPP
#define TAILMIX_DEPENDENCE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tailmix/angular.hpp"
#include "tailmix/functional.hpp"
#include "tailmix/oracle.hpp"
#include "tailmix/radial.hpp"

namespace tailmix {

// Limiting product-exponential law of the scaled joint excesses
// (w(alpha x)(X - x), w(alpha x)(Y - a x)) given X > x, Y > a x.
struct ExcessLimit {
  double a, alpha, c;
  double rate_x;  // D_{a,c}   = alpha/(c a + 1)
  double rate_y;  // D*_{a,c}  = alpha c/(a(c a + 1))
  // Norming function of the excesses.  The unconstrained-dependence limit
  // uses g = w instead, which differs by alpha^(lambda-1) when w is
  // regularly varying; the factor is kept here, never silently normalized.
  std::string scaling;
};

ExcessLimit excess_limit_rates(const FunctionalModel& model, double a);
double excess_limit_survival(const ExcessLimit& lim, double s, double t);

struct ExcessConfig {
  long n_proposals = 2000000;
  std::uint64_t seed = 20260810;
  int chunks = 64;
  int threads = 1;
  long min_accepted = 1000;
};

struct ExcessEmpirical {
  long n_accepted = 0;
  double ks_x = 0.0, ks_y = 0.0;  // KS distances to Exp(rate_x), Exp(rate_y)
  double corr = 0.0;
  double rate_x = 0.0, rate_y = 0.0;
  struct Row {
    double t;
    double emp_x, exp_x, emp_y, exp_y;
  };
  std::vector<Row> survival_rows;
};

// Conditioned acceptance-rejection draw of joint exceedances, excesses
// rescaled by w(alpha x); deterministic in (seed, n_proposals, chunks).
ExcessEmpirical excess_empirical(const RadialLaw& radial, const FunctionalModel& model,
                                 double a, double x, const ExcessConfig& cfg);

// Bivariate excess-limit survival (s,t) -> J_{s,t}/J_{0,0} under the angular
// limit condition; generally not a product law.
class AngularExcessLimit {
public:
  AngularExcessLimit(const AngularModel& model, double a);
  double survival(double s, double t) const;
  double j00() const { return j00_; }

private:
  const AngularModel* model_;
  double a_, j00_;
};

// S(x,y) = int_0^inf (t + ln x)_+^g1 (t + ln y)_+^g2 e^-t dt / Gamma(g1+g2+1);
// S(1,1) = 1 and S(cx,cy) = c S(x,y) for x,y,c in (0,1].
double fgm_s_limit(double x, double y, double gamma1, double gamma2);

struct ResidualIndex {
  double eta;
  enum class Source { closed_form, empirical } source;
  double slope = 0.0;    // regression slope of log S_u(1,1) on log u
  int points_used = 0;
  double xi_gap = 0.0;   // w(b2(u)) (b2(u) - b1(u)) at the largest grid u
};

// eta = alpha^(-lambda) with lambda the Weibull-type index of the radial
// scaling function; depends on neither c nor the b2 gap.
ResidualIndex residual_index_functional(const FunctionalModel& model, const RadialLaw& radial,
                                        double a = 1.0);

// Regression estimate of eta from S_u(1,1) = P(X > b1(u), Y > b2(u)) on a
// geometric u grid (>= 5 points); S_u is computed by the exact quadrature
// oracle, marginal quantiles b_i by inversion of the exact marginal laws.
// The smallest u is dropped until consecutive local slopes stabilize
// within 5%.
ResidualIndex empirical_eta(const RadialLaw& radial, const FunctionalModel& model,
                            std::span<const double> u_grid, const OracleConfig& cfg);

// Finite-u value of the tail dependence ratio
//   l_u(s,t) = P(X > b1(u/s), Y > b2(u/t)) / min(s/u, t/u).
double tail_dependence_l(const RadialLaw& radial, const MixtureView& view, double s, double t,
                         double u, const OracleConfig& cfg);

}  // namespace tailmix

#endif
