#ifndef TAILMIX_ANGULAR_HPP
#define TAILMIX_ANGULAR_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tailmix/rng.hpp"

namespace tailmix {

// Dependence model for an angular pair (U1,U2) with U1 in (0,1]: exact joint
// tail for the oracles plus the limit data (gamma, L_a, xi_a) used by the
// first-order expansion.  With U_a := min(U1, U2/a), the contract is
//
//   P(U_a > 1 - s)            = s^gamma(a) * slow_factor(a, s)   exactly,
//   P(U1 > 1-(s-d)/x, U2 > a(1-(s-e)/x)) / P(U_a > 1-1/x) -> xi(a, s, d, e).
//
// xi is normalized so that xi(a, s, 0, 0) = s^gamma(a).  Instances are
// immutable; the sampler takes an explicit RNG state.
class AngularModel {
public:
  virtual ~AngularModel() = default;
  const std::string& label() const { return label_; }

  virtual bool supports(double a) const = 0;
  // Exact P(U1 > u1, U2 > u2) for u1, u2 in [0,1).
  virtual double joint_tail(double u1, double u2) const = 0;
  virtual double gamma(double a) const = 0;
  virtual double slow_factor(double a, double s) const = 0;
  // delta >= 0; eta may be negative (used by the shift identity for the
  // J integrals).
  virtual double xi(double a, double s, double delta, double eta) const = 0;
  // Kink locations of s -> xi(a, s, delta, eta), for quadrature panels.
  virtual std::vector<double> xi_breakpoints(double a, double delta, double eta) const = 0;
  virtual double marginal_survival1(double u) const = 0;
  virtual double marginal_survival2(double u) const = 0;
  virtual std::pair<double, double> sample(CounterRng& rng) const = 0;
  // Radii where r -> joint_tail(q1/r, q2/r) has kinks.
  virtual std::vector<double> joint_kink_radii(double /*q1*/, double /*q2*/) const {
    return {};
  }

protected:
  explicit AngularModel(std::string label) : label_(std::move(label)) {}

private:
  std::string label_;
};

struct LimitData {
  double gamma;
  std::function<double(double)> La;
};

// Limit exponent and slowly varying factor of P(U_a > 1-s); throws
// InputError for an unsupported (model, a) pairing.
LimitData limit_data(const AngularModel& model, double a);

// U2 = sqrt(U1) >= U1 a.s., P(U1 > 1-s) = s^gamma1 exactly.  gamma1 = 0 is
// the degenerate pair U1 = U2 = 1.
class MinDominated final : public AngularModel {
public:
  explicit MinDominated(double gamma1);
  bool supports(double a) const override;
  double joint_tail(double u1, double u2) const override;
  double gamma(double a) const override;
  double slow_factor(double a, double s) const override;
  double xi(double a, double s, double delta, double eta) const override;
  std::vector<double> xi_breakpoints(double a, double delta, double eta) const override;
  double marginal_survival1(double u) const override;
  double marginal_survival2(double u) const override;
  std::pair<double, double> sample(CounterRng& rng) const override;
  std::vector<double> joint_kink_radii(double q1, double q2) const override;

private:
  double g1_;
};

// U_i = lambda_i S1 + (1-lambda_i) S2 with independent S_i on [0,1],
// P(S_i > 1-s) = s^gamma_i.  Requires lambda1 >= lambda2 and gamma2 > 0.
// Supported at a = 1 only.
class LinearCombo final : public AngularModel {
public:
  LinearCombo(double lambda1, double lambda2, double gamma1, double gamma2);
  bool supports(double a) const override;
  double joint_tail(double u1, double u2) const override;
  double gamma(double a) const override;
  double slow_factor(double a, double s) const override;
  double xi(double a, double s, double delta, double eta) const override;
  std::vector<double> xi_breakpoints(double a, double delta, double eta) const override;
  double marginal_survival1(double u) const override;
  double marginal_survival2(double u) const override;
  std::pair<double, double> sample(CounterRng& rng) const override;

  // Un-normalized limit function: the inner integral over the S2 coordinate
  // without the normalizer; xi = xi_tilde / normalizer.
  double xi_tilde(double s, double delta, double eta) const;
  // xi_tilde(1,0,0) = gamma2 * C(gamma1, gamma2, lambda1, lambda2).
  double normalizer() const { return norm_; }
  double c_constant() const { return c_const_; }

private:
  double l1_, l2_, g1_, g2_;
  double c_const_, norm_, s_exact_;
};

// Two-integral constant of the linear-combination small-s limit,
// xi_tilde(s,0,0) = gamma2 * C * s^(gamma1+gamma2).
double c_constant(double gamma1, double gamma2, double lambda1, double lambda2);

// Farlie-Gumbel-Morgenstern-type tail: joint_tail(u1,u2) =
// B1*B2*(1 + K*B1*B2) with B_i = (1-u_i)^gamma_i.  This tail functional is
// what the expansions and oracles integrate; it is componentwise monotone
// and 2-increasing on the open square but carries total mass 1+K at the
// origin, so the sampler draws instead from the standard FGM copula with the
// same margins (survival B1*B2*(1 + K*(1-B1)*(1-B2))), which agrees at K = 0
// and matches the corner behaviour up to the constant bracket.
class Fgm final : public AngularModel {
public:
  Fgm(double k, double gamma1, double gamma2);
  bool supports(double a) const override;
  double joint_tail(double u1, double u2) const override;
  double gamma(double a) const override;
  double slow_factor(double a, double s) const override;
  double xi(double a, double s, double delta, double eta) const override;
  std::vector<double> xi_breakpoints(double a, double delta, double eta) const override;
  double marginal_survival1(double u) const override;
  double marginal_survival2(double u) const override;
  std::pair<double, double> sample(CounterRng& rng) const override;
  double k() const { return k_; }

private:
  double k_, g1_, g2_;
};

}  // namespace tailmix

#endif
