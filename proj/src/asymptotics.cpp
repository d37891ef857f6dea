#include "tailmix/asymptotics.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "tailmix/errors.hpp"
#include "tailmix/quadrature.hpp"

namespace tailmix {

const char* method_name(Method m) {
  switch (m) {
    case Method::angular: return "angular";
    case Method::functional: return "functional";
    case Method::elliptical_closed: return "elliptical_closed";
    case Method::lp_closed: return "lp_closed";
    case Method::marginal: return "marginal";
    case Method::quadrature: return "quadrature";
    case Method::monte_carlo: return "monte_carlo";
  }
  return "?";
}

double TailEstimate::value() const { return std::exp(log_value); }
double TailEstimate::log10_value() const { return log_value / std::log(10.0); }

double TailEstimate::component_sum() const {
  double s = 0.0;
  for (const auto& [name, lv] : log_components) s += lv;
  return s;
}

TailEstimate make_estimate(Method m, std::vector<std::pair<std::string, double>> comps,
                           std::optional<double> rel_error) {
  TailEstimate e;
  e.method = m;
  e.log_components = std::move(comps);
  e.log_value = e.component_sum();
  e.rel_error = rel_error;
  return e;
}

double j_integral(const AngularModel& model, double a, double delta, double eta) {
  if (!(delta >= 0.0)) throw InputError("j_integral: delta must be >= 0");
  const double gamma = model.gamma(a);
  const double shift = std::fabs(delta) + std::fabs(eta);

  auto f = [&](double s) { return model.xi(a, s, delta, eta) * std::exp(-s); };
  // xi(a,s,delta,eta) <= (s + shift)^gamma for the shipped models, so the
  // truncated mass beyond T is below 2 (T+shift)^gamma exp(-T) once
  // T + shift >= 2 gamma.
  auto remainder = [&](double T) {
    if (T + shift < 2.0 * (gamma + 1.0)) return 1.0;
    return 2.0 * std::pow(T + shift, gamma) * std::exp(-T);
  };
  std::vector<double> bps = model.xi_breakpoints(a, delta, eta);
  quad::Result r = quad::integrate_tail(f, delta, remainder, 1e-12, bps);
  if (!(r.value > 0.0)) throw NumericError("j_integral: integral not positive");
  return r.value;
}

TailEstimate angular_tail_approx(const RadialLaw& radial, const AngularModel& model,
                                 double a, double delta, double eta, double x) {
  if (!(eta >= 0.0)) throw InputError("angular_tail_approx: eta must be >= 0");
  LimitData lim = limit_data(model, a);
  double v = radial.scaling_v(x);
  if (!(v >= 1.0))
    throw InputError("angular_tail_approx: x too small (v(x) < 1, outside the tail regime)");
  double j = j_integral(model, a, delta, eta);
  return make_estimate(Method::angular,
                       {{"J", std::log(j)},
                        {"La", std::log(lim.La(1.0 / v))},
                        {"v_pow", -lim.gamma * std::log(v)},
                        {"sf", radial.log_survival(x)}});
}

TailEstimate marginal_tail_asymptotic(const RadialLaw& radial, double gamma,
                                      const std::function<double(double)>& L, double x) {
  if (!(gamma >= 0.0)) throw InputError("marginal_tail_asymptotic: gamma must be >= 0");
  if (!(x > 0.0)) throw InputError("marginal_tail_asymptotic: x must be positive");
  double v = radial.scaling_v(x);
  return make_estimate(Method::marginal,
                       {{"coeff", std::lgamma(gamma + 1.0)},
                        {"La", std::log(L(1.0 / v))},
                        {"v_pow", -gamma * std::log(v)},
                        {"sf", radial.log_survival(x)}});
}

TailEstimate functional_tail_approx(const RadialLaw& radial, const FunctionalModel& model,
                                    double a, double x) {
  return functional_tail_approx(radial, model, model.solve_alpha(a), x);
}

TailEstimate functional_tail_approx(const RadialLaw& radial, const FunctionalModel& model,
                                    const CriticalData& crit, double x) {
  if (!model.w_law().continuous_density())
    throw InputError(
        "functional_tail_approx: W density not continuous at 1/alpha; "
        "supply (gamma_a, L) explicitly");
  double h = model.w_density_at(1.0 / crit.alpha);
  double coeff = h * (crit.c * crit.a + 1.0) / crit.alpha;
  double xs = crit.alpha * x;
  return make_estimate(Method::functional,
                       {{"pp", std::log(model.signs().pp)},
                        {"coeff", std::log(coeff)},
                        {"v_pow", -std::log(radial.scaling_v(xs))},
                        {"sf", radial.log_survival(xs)}});
}

TailEstimate functional_tail_approx(const RadialLaw& radial, const FunctionalModel& model,
                                    const CriticalData& crit, double x, double gamma_a,
                                    const std::function<double(double)>& L_k1k2) {
  if (!(gamma_a >= 0.0)) throw InputError("functional_tail_approx: gamma_a must be >= 0");
  double xs = crit.alpha * x;
  double v = radial.scaling_v(xs);
  return make_estimate(Method::functional,
                       {{"pp", std::log(model.signs().pp)},
                        {"coeff", std::lgamma(gamma_a + 1.0)},
                        {"La", std::log(L_k1k2(1.0 / v))},
                        {"v_pow", -gamma_a * std::log(v)},
                        {"sf", radial.log_survival(xs)}});
}

TailEstimate functional_excess_approx(const RadialLaw& radial, const FunctionalModel& model,
                                      double a, double delta, double eta, double x) {
  return functional_excess_approx(radial, model, model.solve_alpha(a), delta, eta, x);
}

TailEstimate functional_excess_approx(const RadialLaw& radial, const FunctionalModel& model,
                                      const CriticalData& crit, double delta, double eta,
                                      double x) {
  if (!(delta >= 0.0 && eta >= 0.0))
    throw InputError("functional_excess_approx: delta, eta must be >= 0");
  if (!model.w_law().continuous_density())
    throw InputError("functional_excess_approx: requires a continuous W density");
  double h = model.w_density_at(1.0 / crit.alpha);
  double ca = crit.c * crit.a;
  double xs = crit.alpha * x;
  return make_estimate(Method::functional,
                       {{"pp", std::log(model.signs().pp)},
                        {"coeff", std::log(h / crit.alpha * (ca + 1.0))},
                        {"excess", -(ca * eta + delta) / (ca + 1.0)},
                        {"v_pow", -std::log(radial.scaling_v(xs))},
                        {"sf", radial.log_survival(xs)}});
}

TailEstimate elliptical_closed_form(double rho, double a, const RadialLaw& radial, double x) {
  if (!(rho > -1.0 && rho < 1.0)) throw InputError("elliptical_closed_form: rho in (-1,1)");
  if (!(a > rho && a <= 1.0))
    throw InputError("elliptical_closed_form: need a in (rho, 1]");
  double orho2 = 1.0 - rho * rho;
  double alpha = elliptical_alpha(rho, a);
  double coeff = alpha * alpha * std::pow(orho2, 1.5) /
                 (2.0 * M_PI * (1.0 - a * rho) * (a - rho));
  double xs = alpha * x;
  return make_estimate(Method::elliptical_closed,
                       {{"coeff", std::log(coeff)},
                        {"v_pow", -std::log(radial.scaling_v(xs))},
                        {"sf", radial.log_survival(xs)}});
}

TailEstimate lp_closed_form(const RadialLaw& radial, const FunctionalModel& lp_model,
                            double a, double delta, double eta, double x) {
  if (!lp_model.traits().lp_p)
    throw InputError("lp_closed_form: model does not carry an Lp exponent");
  if (!(a > 0.0 && a <= 1.0)) throw InputError("lp_closed_form: a in (0,1]");
  double p = *lp_model.traits().lp_p;
  double ap = std::pow(a, p);
  double alpha = std::pow(1.0 + ap, 1.0 / p);
  double h = lp_model.w_density_at(1.0 / alpha);
  double xs = alpha * x;
  return make_estimate(Method::lp_closed,
                       {{"pp", std::log(lp_model.signs().pp)},
                        {"coeff", (p - 2.0) * std::log(alpha) + std::log(h)},
                        {"excess", -(delta + ap * eta) / (1.0 + ap)},
                        {"v_pow", -std::log(x * radial.scaling_w(xs))},
                        {"sf", radial.log_survival(xs)}});
}

TailEstimate functional_marginal_approx(const RadialLaw& radial, const FunctionalModel& model,
                                        Component which, double x) {
  if (!(x > 0.0)) throw InputError("functional_marginal_approx: x must be positive");
  if (model.rho() < 0.0)
    throw InputError("functional_marginal_approx: rho < 0 not supported");
  double v = radial.scaling_v(x);
  if (!(v > 1.0)) throw InputError("functional_marginal_approx: x too small (v <= 1)");
  const SignProbs& sp = model.signs();

  if (which == Component::X) {
    if (!model.traits().tail_gamma1)
      throw InputError("functional_marginal_approx: model lacks the W tail exponent");
    double g1 = *model.traits().tail_gamma1;
    double pw = 1.0 - model.w_cdf(1.0 - 1.0 / v);
    return make_estimate(Method::marginal, {{"sign", std::log(sp.pm + sp.pp)},
                                            {"coeff", std::lgamma(g1 + 1.0)},
                                            {"pw", std::log(pw)},
                                            {"sf", radial.log_survival(x)}});
  }

  if (!model.traits().tail_gamma2)
    throw InputError("functional_marginal_approx: model lacks the z(W) tail exponent");
  double g2 = *model.traits().tail_gamma2;
  double sign_coeff;
  if (model.rho() > 0.0) {
    // The mixed-sign branches only drop out when sup z* < 1.
    const int n = 512;
    for (int i = 0; i <= n; ++i) {
      if (model.zstar(static_cast<double>(i) / n) >= 1.0 - 1e-9)
        throw InputError("functional_marginal_approx: need sup z* < 1 when rho > 0");
    }
    sign_coeff = sp.pp;
  } else {
    sign_coeff = sp.mp + sp.pp;  // with rho = 0 both I2 = +1 branches carry z*(W)
  }
  double pz = model.z_superlevel_prob(1.0 - 1.0 / v);
  return make_estimate(Method::marginal, {{"sign", std::log(sign_coeff)},
                                          {"coeff", std::lgamma(g2 + 1.0)},
                                          {"pz", std::log(pz)},
                                          {"sf", radial.log_survival(x)}});
}

}  // namespace tailmix
