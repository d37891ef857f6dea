#ifndef TAILMIX_FUNCTIONAL_HPP
#define TAILMIX_FUNCTIONAL_HPP

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tailmix/rng.hpp"

namespace tailmix {

// Law of the mixing variable W on (0,1).
class WLaw {
public:
  virtual ~WLaw() = default;
  virtual double cdf(double x) const = 0;      // P(W <= x)
  virtual double density(double x) const = 0;  // x in (0,1); may be +inf at isolated points
  // True when the density is positive and continuous on (0,1); the local
  // concentration exponent at interior points is then 1.
  virtual bool continuous_density() const = 0;
  virtual double quantile(double p) const;  // default: bisection on cdf
};

// W with W^2 ~ Beta(1/2,1/2): cdf (2/pi) asin(x), density 2/(pi sqrt(1-x^2)).
class ArcsineW final : public WLaw {
public:
  double cdf(double x) const override;
  double density(double x) const override;
  bool continuous_density() const override { return true; }
  double quantile(double p) const override;
};

// W = V^(1/p) with V ~ Beta(a,b); density p x^(p-1) g(x^p).
class PowerBetaW final : public WLaw {
public:
  PowerBetaW(double p, double a, double b);
  double cdf(double x) const override;
  double density(double x) const override;
  bool continuous_density() const override { return true; }
  double quantile(double p) const override;

private:
  double p_, a_, b_;
};

// Point mass at x0 (degenerate mixing variable, test and edge cases).
class PointMassW final : public WLaw {
public:
  explicit PointMassW(double x0);
  double cdf(double x) const override;
  double density(double x) const override;
  bool continuous_density() const override { return false; }
  double quantile(double p) const override;

private:
  double x0_;
};

// W whose mass near `center` concentrates like a pure power:
//   P(W - center in (K1 u, K2 u)) = c0 (K2^kappa + |K1|^kappa) u^kappa
// for small u > 0, with uniform mass elsewhere.  Exercises concentration
// exponents kappa != 1 (no continuous density at the center).
class SingularPowerW final : public WLaw {
public:
  SingularPowerW(double center, double halfwidth, double kappa, double inner_mass);
  double cdf(double x) const override;
  double density(double x) const override;
  bool continuous_density() const override { return false; }
  double quantile(double p) const override;

  double kappa() const { return kappa_; }
  // The constant slowly varying factor L_{K1,K2} of the concentration law.
  double concentration_factor(double k1, double k2) const;

private:
  double m_, d_, kappa_, c0_, rho_out_;
};

// P(I1 = s1, I2 = s2) over signs in {-1,+1}; must sum to 1 with pp > 0.
struct SignProbs {
  double mm, mp, pm, pp;
  static SignProbs symmetric() { return {0.25, 0.25, 0.25, 0.25}; }
};

// Critical direction data at level a: alpha solves z(1/alpha) = a/alpha with
// z decreasing on the window [1/alpha - eps, 1/alpha + eps]; c is the local
// inverse-slope magnitude of z at a/alpha.
struct CriticalData {
  double a = 1.0;
  double alpha = 0.0;
  double c = 0.0;
  double eps_window = 0.0;
  double c_left = 0.0;   // one-sided difference quotient from below a/alpha
  double c_right = 0.0;  // and from above
};

// Functional-dependence pair (U1, U2) = (I1 W, rho I1 W + I2 z*(W)) with
// signs (I1,I2), W and the radial factor mutually independent.  Immutable
// after construction.
class FunctionalModel {
public:
  struct Traits {
    std::optional<double> tail_gamma1;  // RV exponent of P(W > 1-s) at 0
    std::optional<double> tail_gamma2;  // RV exponent of P(z(W) > 1-s) at 0
    std::optional<double> lp_p;
    std::optional<double> elliptical_rho;
  };

  FunctionalModel(double rho, std::function<double(double)> zstar,
                  std::shared_ptr<const WLaw> w, SignProbs signs,
                  std::string label, Traits traits = {});

  const std::string& label() const { return label_; }
  double rho() const { return rho_; }
  const WLaw& w_law() const { return *w_; }
  const SignProbs& signs() const { return signs_; }
  const Traits& traits() const { return traits_; }

  double zstar(double x) const { return zstar_(x); }
  double z(double x) const { return rho_ * x + zstar_(x); }

  double w_cdf(double x) const { return w_->cdf(x); }
  // Density of W at interior x; x = 0 or 1 rejected.
  double w_density_at(double x) const;

  // Root alpha of z(1/alpha) - a/alpha, with window, side-condition and
  // uniqueness checks, and finite-difference inverse slope c.
  CriticalData solve_alpha(double a) const;

  // Exact P(U1 > t1, U2 > t2) for t1 > 0 (t2 unrestricted): sign events are
  // enumerated and each branch reduces to W-intervals via superlevel sets.
  double angular_joint_survival(double t1, double t2) const;

  // Exact P(X > x(1+delta/v), Y > a x(1+eta/v) | R = r) where v is the
  // caller's normalization (v(alpha x) in the local expansions).
  double joint_tail_given_r(double a, double x, double r, double delta,
                            double eta, double v_norm) const;

  double marginal_survival_u1(double t) const;  // P(U1 > t), t > 0
  double marginal_survival_u2(double t) const;  // P(U2 > t), t > 0

  // P(z(W) > thr) and P(W > thr) through the same superlevel machinery.
  double z_superlevel_prob(double thr) const;
  double w_survival(double t) const { return 1.0 - w_->cdf(t); }

  std::pair<double, double> sample(CounterRng& rng) const;

  // Upper endpoint of U2 restricted to I1 = +1 branches (binding radius of
  // joint events) and over all branches (marginal events).
  double u2_sup_joint() const { return u2_sup_joint_; }
  double u2_sup() const { return u2_sup_all_; }

private:
  double branch_value(int i1, int i2, double x) const {
    return rho_ * i1 * x + i2 * zstar_(x);
  }
  static int branch_index(int i1, int i2) { return (i1 > 0 ? 2 : 0) + (i2 > 0 ? 1 : 0); }
  double branch_prob_above(int i1, int i2, double lo, double thr) const;

  double rho_;
  std::function<double(double)> zstar_;
  std::shared_ptr<const WLaw> w_;
  SignProbs signs_;
  std::string label_;
  Traits traits_;
  double u2_sup_joint_, u2_sup_all_;
  // Monotone-piece boundaries of each sign branch on [0,1] (branches are
  // assumed piecewise monotone with a handful of turning points).
  std::array<std::vector<double>, 4> piece_bounds_;
};

FunctionalModel make_elliptical(double rho, SignProbs signs = SignProbs::symmetric());
FunctionalModel make_lp(double p, double beta_a, double beta_b,
                        SignProbs signs = SignProbs::symmetric());
// Lp geometry with an arbitrary W law (e.g. SingularPowerW).
FunctionalModel make_lp_with(double p, std::shared_ptr<const WLaw> w,
                             SignProbs signs = SignProbs::symmetric(),
                             std::string label = "lp_custom");

// Closed forms for the elliptical geometry (oracles for solve_alpha).
double elliptical_alpha(double rho, double a);
double elliptical_c(double rho, double a);

}  // namespace tailmix

#endif
