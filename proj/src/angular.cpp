#include "tailmix/angular.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tailmix/errors.hpp"
#include "tailmix/quadrature.hpp"

namespace tailmix {

namespace {

// b^g with the degenerate convention b^0 = 1{b > 0} (point mass at the
// upper endpoint).
double pow_tail(double b, double g) {
  if (b <= 0.0) return 0.0;
  if (g == 0.0) return 1.0;
  return std::pow(b, g);
}

void check_unit_interval(double u, const char* who) {
  if (!(u >= 0.0 && u < 1.0)) {
    std::ostringstream m;
    m << who << ": threshold must lie in [0,1), got " << u;
    throw InputError(m.str());
  }
}

void check_level(double a) {
  if (!(a > 0.0 && a <= 1.0)) throw InputError("level a must lie in (0,1]");
}

void check_s(double s) {
  if (!(s > 0.0)) throw InputError("xi: s must be positive");
}

}  // namespace

LimitData limit_data(const AngularModel& model, double a) {
  check_level(a);
  if (!model.supports(a)) {
    std::ostringstream m;
    m << model.label() << ": level a=" << a << " not supported";
    throw InputError(m.str());
  }
  const AngularModel* p = &model;
  return {model.gamma(a), [p, a](double s) { return p->slow_factor(a, s); }};
}

// --------------------------------------------------------------------------
// MinDominated

MinDominated::MinDominated(double gamma1) : AngularModel("min_dominated"), g1_(gamma1) {
  if (!(gamma1 >= 0.0)) throw InputError("MinDominated: gamma1 must be >= 0");
}

bool MinDominated::supports(double a) const { return a > 0.0 && a <= 1.0; }

double MinDominated::joint_tail(double u1, double u2) const {
  check_unit_interval(u1, "joint_tail");
  check_unit_interval(u2, "joint_tail");
  // U2 = sqrt(U1): the event is U1 > max(u1, u2^2).
  return pow_tail(1.0 - std::max(u1, u2 * u2), g1_);
}

double MinDominated::gamma(double a) const {
  check_level(a);
  return g1_;
}

double MinDominated::slow_factor(double a, double s) const {
  check_level(a);
  if (!(s > 0.0 && s <= 1.0)) throw InputError("slow_factor: s must lie in (0,1]");
  return 1.0;
}

double MinDominated::xi(double a, double s, double delta, double eta) const {
  check_level(a);
  check_s(s);
  if (a == 1.0) return pow_tail(std::min(s - delta, 2.0 * (s - eta)), g1_);
  return pow_tail(s - delta, g1_);
}

std::vector<double> MinDominated::xi_breakpoints(double a, double delta, double eta) const {
  if (a == 1.0) return {delta, eta, 2.0 * eta - delta};
  return {delta};
}

double MinDominated::marginal_survival1(double u) const {
  check_unit_interval(u, "marginal_survival1");
  return pow_tail(1.0 - u, g1_);
}

double MinDominated::marginal_survival2(double u) const {
  check_unit_interval(u, "marginal_survival2");
  return pow_tail(1.0 - u * u, g1_);
}

std::pair<double, double> MinDominated::sample(CounterRng& rng) const {
  double u1 = g1_ == 0.0 ? 1.0 : 1.0 - std::pow(rng.next_unit(), 1.0 / g1_);
  return {u1, std::sqrt(u1)};
}

std::vector<double> MinDominated::joint_kink_radii(double q1, double q2) const {
  // max(q1/r, (q2/r)^2) switches branch at r = q2^2/q1.
  if (q1 > 0.0) return {q2 * q2 / q1};
  return {};
}

// --------------------------------------------------------------------------
// LinearCombo

double c_constant(double gamma1, double gamma2, double lambda1, double lambda2) {
  if (!(lambda2 > 0.0 && lambda2 <= lambda1 && lambda1 < 1.0))
    throw InputError("c_constant: need 0 < lambda2 <= lambda1 < 1");
  if (!(gamma1 >= 0.0 && gamma2 > 0.0))
    throw InputError("c_constant: need gamma1 >= 0, gamma2 > 0");
  const double lb1 = 1.0 - lambda1, lb2 = 1.0 - lambda2;

  // First piece over t in [0,1]; t^{gamma2-1} dt absorbed by t = tau^{1/gamma2}.
  auto f1 = [&](double tau) {
    double t = std::pow(tau, 1.0 / gamma2);
    return pow_tail(1.0 - lb1 * t, gamma1);
  };
  quad::Result p1 = quad::integrate(f1, 0.0, 1.0, {1e-13, 1e-12});

  auto f2 = [&](double t) { return pow_tail(1.0 - lb2 * t, gamma1) * std::pow(t, gamma2 - 1.0); };
  quad::Result p2 = quad::integrate(f2, 1.0, 1.0 / lb2, {1e-13, 1e-12});

  return std::pow(lambda1, -gamma1) / gamma2 * p1.value +
         std::pow(lambda2, -gamma1) * p2.value;
}

LinearCombo::LinearCombo(double lambda1, double lambda2, double gamma1, double gamma2)
    : AngularModel("linear_combo"), l1_(lambda1), l2_(lambda2), g1_(gamma1), g2_(gamma2) {
  if (!(lambda2 > 0.0 && lambda2 <= lambda1 && lambda1 < 1.0))
    throw InputError("LinearCombo: need 0 < lambda2 <= lambda1 < 1");
  if (!(gamma1 >= 0.0 && gamma2 > 0.0))
    throw InputError("LinearCombo: need gamma1 >= 0, gamma2 > 0");
  c_const_ = tailmix::c_constant(g1_, g2_, l1_, l2_);
  norm_ = g2_ * c_const_;
  s_exact_ = std::min(l2_, 1.0 - l1_);
}

bool LinearCombo::supports(double a) const { return a == 1.0; }

double LinearCombo::joint_tail(double u1, double u2) const {
  check_unit_interval(u1, "joint_tail");
  check_unit_interval(u2, "joint_tail");
  const double s1 = 1.0 - u1, s2 = 1.0 - u2;
  const double lb1 = 1.0 - l1_, lb2 = 1.0 - l2_;
  auto kernel = [&](double t) {
    double b = std::min((s1 - lb1 * t) / l1_, (s2 - lb2 * t) / l2_);
    b = std::clamp(b, 0.0, 1.0);
    return pow_tail(b, g1_);
  };
  // gamma2 * t^{gamma2-1} dt = d(t^gamma2).
  auto f = [&](double tau) { return kernel(std::pow(tau, 1.0 / g2_)); };

  quad::Options opt{1e-280, 1e-11, {}, 4096};
  auto add_bp = [&](double t) {
    if (t > 0.0 && t < 1.0) opt.breakpoints.push_back(std::pow(t, g2_));
  };
  add_bp(s1 / lb1);
  add_bp(s2 / lb2);
  add_bp((s1 - l1_) / lb1);
  add_bp((s2 - l2_) / lb2);
  if (l1_ != l2_) add_bp((l1_ * s2 - l2_ * s1) / (l1_ - l2_));
  return quad::integrate(f, 0.0, 1.0, opt).value;
}

double LinearCombo::xi_tilde(double s, double delta, double eta) const {
  check_s(s);
  const double m1 = s - delta, m2 = s - eta;
  if (m1 <= 0.0 || m2 <= 0.0) return 0.0;
  const double lb1 = 1.0 - l1_, lb2 = 1.0 - l2_;
  const double zmax = std::min(m1 / lb1, m2 / lb2);
  auto kernel = [&](double z) {
    double b = std::min((m1 - lb1 * z) / l1_, (m2 - lb2 * z) / l2_);
    return pow_tail(b, g1_);
  };
  auto f = [&](double zeta) { return kernel(std::pow(zeta, 1.0 / g2_)); };
  quad::Options opt{1e-280, 1e-11, {}, 4096};
  if (l1_ != l2_) {
    double zx = (l1_ * m2 - l2_ * m1) / (l1_ - l2_);
    if (zx > 0.0 && zx < zmax) opt.breakpoints.push_back(std::pow(zx, g2_));
  }
  return quad::integrate(f, 0.0, std::pow(zmax, g2_), opt).value;
}

double LinearCombo::gamma(double a) const {
  if (a != 1.0) throw InputError("LinearCombo: implemented for a = 1 only");
  return g1_ + g2_;
}

double LinearCombo::slow_factor(double a, double s) const {
  if (a != 1.0) throw InputError("LinearCombo: implemented for a = 1 only");
  if (!(s > 0.0 && s <= 1.0)) throw InputError("slow_factor: s must lie in (0,1]");
  if (s <= s_exact_) return norm_;
  return joint_tail(1.0 - s, 1.0 - s) / std::pow(s, g1_ + g2_);
}

double LinearCombo::xi(double a, double s, double delta, double eta) const {
  if (a != 1.0) throw InputError("LinearCombo: implemented for a = 1 only");
  return xi_tilde(s, delta, eta) / norm_;
}

std::vector<double> LinearCombo::xi_breakpoints(double /*a*/, double delta, double eta) const {
  std::vector<double> bp{delta, eta};
  if (l1_ != l2_) {
    // Inner min switches branch where (s-delta)/(1-l1) = (s-eta)/(1-l2).
    double d = (1.0 - l2_) - (1.0 - l1_);
    if (d != 0.0) bp.push_back((delta * (1.0 - l2_) - eta * (1.0 - l1_)) / d);
  }
  return bp;
}

double LinearCombo::marginal_survival1(double u) const { return joint_tail(u, 0.0); }
double LinearCombo::marginal_survival2(double u) const { return joint_tail(0.0, u); }

std::pair<double, double> LinearCombo::sample(CounterRng& rng) const {
  double s1 = g1_ == 0.0 ? 1.0 : 1.0 - std::pow(rng.next_unit(), 1.0 / g1_);
  double s2 = 1.0 - std::pow(rng.next_unit(), 1.0 / g2_);
  return {l1_ * s1 + (1.0 - l1_) * s2, l2_ * s1 + (1.0 - l2_) * s2};
}

// --------------------------------------------------------------------------
// Fgm

Fgm::Fgm(double k, double gamma1, double gamma2)
    : AngularModel("fgm"), k_(k), g1_(gamma1), g2_(gamma2) {
  if (!(k >= 0.0 && k < 1.0)) throw InputError("Fgm: need K in [0,1)");
  if (!(gamma1 >= 0.0 && gamma2 >= 0.0)) throw InputError("Fgm: gammas must be >= 0");
}

bool Fgm::supports(double a) const { return a > 0.0 && a <= 1.0; }

double Fgm::joint_tail(double u1, double u2) const {
  check_unit_interval(u1, "joint_tail");
  check_unit_interval(u2, "joint_tail");
  double b1 = pow_tail(1.0 - u1, g1_), b2 = pow_tail(1.0 - u2, g2_);
  return b1 * b2 * (1.0 + k_ * b1 * b2);
}

double Fgm::gamma(double a) const {
  check_level(a);
  return a == 1.0 ? g1_ + g2_ : g1_;
}

double Fgm::slow_factor(double a, double s) const {
  check_level(a);
  if (!(s > 0.0 && s <= 1.0)) throw InputError("slow_factor: s must lie in (0,1]");
  if (a == 1.0) return 1.0 + k_ * std::pow(s, g1_ + g2_);
  double b2 = std::pow(1.0 - a * (1.0 - s), g2_);
  return b2 * (1.0 + k_ * std::pow(s, g1_) * b2);
}

double Fgm::xi(double a, double s, double delta, double eta) const {
  check_level(a);
  check_s(s);
  if (a == 1.0) return pow_tail(s - delta, g1_) * pow_tail(s - eta, g2_);
  return pow_tail(s - delta, g1_);
}

std::vector<double> Fgm::xi_breakpoints(double a, double delta, double eta) const {
  if (a == 1.0) return {delta, eta};
  return {delta};
}

double Fgm::marginal_survival1(double u) const {
  check_unit_interval(u, "marginal_survival1");
  return pow_tail(1.0 - u, g1_);
}

double Fgm::marginal_survival2(double u) const {
  check_unit_interval(u, "marginal_survival2");
  return pow_tail(1.0 - u, g2_);
}

std::pair<double, double> Fgm::sample(CounterRng& rng) const {
  // Conditional-distribution method on the copula
  // C(u,v) = uv(1 + K(1-u)(1-v)).
  double u = rng.next_unit();
  double w = rng.next_unit();
  double aa = k_ * (1.0 - 2.0 * u);
  double disc = (1.0 + aa) * (1.0 + aa) - 4.0 * aa * w;
  double v = 2.0 * w / (1.0 + aa + std::sqrt(disc));
  double x1 = g1_ == 0.0 ? 1.0 : 1.0 - std::pow(1.0 - u, 1.0 / g1_);
  double x2 = g2_ == 0.0 ? 1.0 : 1.0 - std::pow(1.0 - v, 1.0 / g2_);
  return {x1, x2};
}

}  // namespace tailmix
