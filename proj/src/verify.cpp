#include "tailmix/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "tailmix/asymptotics.hpp"
#include "tailmix/dependence.hpp"
#include "tailmix/errors.hpp"
#include "tailmix/oracle.hpp"
#include "tailmix/quadrature.hpp"

namespace tailmix {

namespace {

struct Harness {
  std::vector<CheckResult> results;

  void run(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{name, true, ""};
    try {
      r.detail = body();  // empty detail means pass with nothing to report
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  }
};

void expect(bool cond, const std::string& msg) {
  if (!cond) throw NumericError(msg);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

double rel_diff(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

}  // namespace

const std::vector<ShippedConfig>& shipped_configurations() {
  static const std::vector<ShippedConfig> configs = [] {
    std::vector<ShippedConfig> v;
    auto chi2 = std::make_shared<ChiLaw>(2);
    auto chi3 = std::make_shared<ChiLaw>(3);
    auto expo = std::make_shared<WeibullTailLaw>(1.0, 1.0);
    v.push_back({"min_dominated_chi2", chi2, std::make_shared<MinDominated>(1.0), nullptr, 1.0});
    v.push_back({"fgm_chi2", chi2, std::make_shared<Fgm>(0.5, 1.0, 1.0), nullptr, 1.0});
    v.push_back({"fgm_chi2_a05", chi2, std::make_shared<Fgm>(0.5, 1.0, 1.0), nullptr, 0.5});
    v.push_back({"linear_combo_chi2", chi2,
                 std::make_shared<LinearCombo>(0.5, 0.5, 1.0, 1.0), nullptr, 1.0});
    v.push_back({"elliptical05_chi2", chi2, nullptr,
                 std::make_shared<FunctionalModel>(make_elliptical(0.5)), 1.0});
    v.push_back({"elliptical03_chi2_a08", chi2, nullptr,
                 std::make_shared<FunctionalModel>(make_elliptical(0.3)), 0.8});
    v.push_back({"lp2_chi2", chi2, nullptr,
                 std::make_shared<FunctionalModel>(make_lp(2.0, 0.5, 0.5)), 1.0});
    v.push_back({"lp1_exponential", expo, nullptr,
                 std::make_shared<FunctionalModel>(make_lp(1.0, 1.0, 1.0)), 1.0});
    v.push_back({"elliptical0_chi3", chi3, nullptr,
                 std::make_shared<FunctionalModel>(make_elliptical(0.0)), 1.0});
    return v;
  }();
  return configs;
}

std::vector<CheckResult> run_verification(int threads) {
  Harness h;

  h.run("radial.quantile_roundtrip", [] {
    std::vector<std::shared_ptr<RadialLaw>> laws{
        std::make_shared<ChiLaw>(2), std::make_shared<ChiLaw>(3),
        std::make_shared<WeibullTailLaw>(0.7, 1.3), std::make_shared<LogNormalLaw>(0.0, 1.0)};
    for (const auto& law : laws) {
      for (double x : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        double q = law->inverse_log_survival(law->log_survival(x));
        expect(std::fabs(law->log_survival(q) - law->log_survival(x)) <= 1e-9,
               law->label() + ": roundtrip off at x=" + fmt(x));
      }
    }
    return "";
  });

  h.run("radial.chi2_closed_forms", [] {
    ChiLaw chi2(2);
    expect(rel_diff(chi2.survival(2.0), std::exp(-2.0)) < 1e-15, "chi2 survival");
    expect(chi2.scaling_w(10.0) == 10.0, "chi2 scaling");
    WeibullTailLaw e(1.0, 1.0);
    expect(rel_diff(e.quantile_b(std::exp(5.0)), 5.0) < 1e-12, "exponential quantile");
    return "";
  });

  h.run("radial.tail_decay_dominates_powers", [] {
    ChiLaw chi2(2);
    double prev = 0.0;
    bool first = true;
    for (double x : {5.0, 10.0, 15.0}) {
      double lt = 3.0 * std::log(chi2.scaling_v(x)) + chi2.log_survival(1.5 * x) -
                  chi2.log_survival(x);
      if (!first) expect(lt < prev, "v^c sf(1.5x)/sf(x) not decreasing");
      prev = lt;
      first = false;
    }
    expect(prev < -50.0, "terminal value not near zero");
    return "";
  });

  h.run("radial.mda_ratios_converge", [] {
    struct Case {
      std::shared_ptr<RadialLaw> law;
      std::vector<double> grid;
    };
    std::vector<Case> cases{
        {std::make_shared<ChiLaw>(2), {3.0, 6.0, 10.0}},
        {std::make_shared<ChiLaw>(3), {3.0, 6.0, 10.0}},
        {std::make_shared<WeibullTailLaw>(0.5, 2.0), {3.0, 6.0, 10.0}},
        {std::make_shared<LogNormalLaw>(0.0, 1.0), {std::exp(1.0), std::exp(2.0), std::exp(3.0)}}};
    for (const auto& c : cases) {
      auto rows = mda_diagnostics(*c.law, c.grid, std::vector<double>{1.0});
      expect(rows[1].dev1 <= rows[0].dev1 + 1e-14 && rows[2].dev1 <= rows[1].dev1 + 1e-14,
             c.law->label() + ": mda ratio1 deviation not shrinking");
      expect(rows[2].dev2 <= rows[0].dev2 + 1e-14, c.law->label() + ": ratio2 not shrinking");
    }
    return "";
  });

  h.run("angular.exact_power_tail", [] {
    struct Case {
      std::shared_ptr<AngularModel> m;
      double a;
    };
    std::vector<Case> cases{{std::make_shared<Fgm>(0.5, 1.0, 1.0), 1.0},
                            {std::make_shared<Fgm>(0.5, 1.0, 1.0), 0.5},
                            {std::make_shared<MinDominated>(1.0), 1.0},
                            {std::make_shared<MinDominated>(1.0), 0.7},
                            {std::make_shared<LinearCombo>(0.5, 0.5, 1.0, 1.0), 1.0}};
    for (const auto& c : cases) {
      LimitData lim = limit_data(*c.m, c.a);
      for (double s : {0.01, 0.05, 0.2, 0.5}) {
        double exact = c.m->joint_tail(1.0 - s, std::min(c.a * (1.0 - s), 1.0 - 1e-16));
        double formula = std::pow(s, lim.gamma) * lim.La(s);
        expect(rel_diff(exact, formula) <= 1e-10,
               c.m->label() + " a=" + fmt(c.a) + ": tail formula off at s=" + fmt(s));
      }
    }
    return "";
  });

  h.run("angular.limit_condition_converges", [] {
    std::vector<std::shared_ptr<AngularModel>> models{
        std::make_shared<Fgm>(0.5, 1.0, 1.0), std::make_shared<MinDominated>(1.0),
        std::make_shared<LinearCombo>(0.5, 0.5, 1.0, 1.0)};
    for (const auto& m : models) {
      double a = 1.0;
      LimitData lim = limit_data(*m, a);
      for (double s : {0.5, 1.0, 2.0}) {
        for (double d : {0.0, 0.5}) {
          for (double e : {0.0, 0.5}) {
            double target = m->xi(a, s, d, e);
            double prev_dev = 1e9;
            for (double x : {1e2, 1e3, 1e4}) {
              double u1 = 1.0 - (s - d) / x;
              double u2 = a * (1.0 - (s - e) / x);
              double num = (u1 >= 1.0 || u2 >= 1.0) ? 0.0 : m->joint_tail(u1, u2);
              double den = std::pow(1.0 / x, lim.gamma) * lim.La(1.0 / x);
              double dev = std::fabs(num / den - target);
              expect(dev <= prev_dev + 1e-12,
                     m->label() + ": limit deviation grew at s=" + fmt(s));
              prev_dev = dev;
            }
          }
        }
      }
    }
    return "";
  });

  h.run("angular.xi_shift_identity", [] {
    std::vector<std::shared_ptr<AngularModel>> models{
        std::make_shared<Fgm>(0.3, 1.0, 2.0), std::make_shared<MinDominated>(1.5),
        std::make_shared<LinearCombo>(0.7, 0.3, 1.0, 1.0)};
    CounterRng rng(7);
    for (const auto& m : models) {
      for (int i = 0; i < 50; ++i) {
        double eta = 2.0 * rng.next_unit();
        double delta = eta + 2.0 * rng.next_unit();  // delta >= eta
        double s = eta + 0.05 + 3.0 * rng.next_unit();
        double lhs1 = m->xi(1.0, s, delta, eta);
        double rhs1 = m->xi(1.0, s - eta, delta - eta, 0.0);
        expect(rel_diff(lhs1, rhs1) <= 1e-9 || std::fabs(lhs1 - rhs1) <= 1e-11,
               m->label() + ": shift identity (delta side) failed");
        double lhs2 = m->xi(1.0, s, eta, delta);
        double rhs2 = m->xi(1.0, s - eta, 0.0, delta - eta);
        expect(rel_diff(lhs2, rhs2) <= 1e-9 || std::fabs(lhs2 - rhs2) <= 1e-11,
               m->label() + ": shift identity (eta side) failed");
      }
    }
    return "";
  });

  h.run("asymptotics.j_identities", [] {
    for (double g : {0.0, 0.5, 1.0, 2.0}) {
      MinDominated m(g);
      double j00 = j_integral(m, 1.0, 0.0, 0.0);
      expect(std::fabs(j00 - std::tgamma(g + 1.0)) <= 1e-8, "J00 != Gamma(g+1) at g=" + fmt(g));
    }
    std::vector<std::shared_ptr<AngularModel>> models{
        std::make_shared<Fgm>(0.5, 1.0, 1.0), std::make_shared<MinDominated>(1.0),
        std::make_shared<LinearCombo>(0.5, 0.5, 1.0, 1.0)};
    for (const auto& m : models) {
      for (double d : {0.0, 0.5, 1.0}) {
        for (double e : {0.0, 0.25, 0.5, 1.0}) {
          if (e > d) continue;
          double lhs = j_integral(*m, 1.0, d, e);
          double rhs = std::exp(-d) * j_integral(*m, 1.0, 0.0, e - d);
          expect(std::fabs(lhs - rhs) <= 1e-8, m->label() + ": J shift identity failed");
        }
      }
    }
    return "";
  });

  h.run("asymptotics.j_upper_bound", [] {
    Fgm m(0.5, 1.0, 1.0);
    double cap = std::tgamma(3.0);
    CounterRng rng(11);
    for (int i = 0; i < 20; ++i) {
      double d = 2.0 * rng.next_unit(), e = 2.0 * rng.next_unit();
      expect(j_integral(m, 1.0, d, e) <= cap + 1e-10, "J exceeded Gamma(gamma+1)");
    }
    return "";
  });

  h.run("functional.elliptical_closed_forms", [] {
    for (double rho : {-0.5, 0.0, 0.3, 0.7}) {
      for (double a : {0.5, 0.8, 1.0}) {
        if (a <= rho) continue;
        FunctionalModel m = make_elliptical(rho);
        CriticalData crit = m.solve_alpha(a);
        expect(rel_diff(crit.alpha, elliptical_alpha(rho, a)) <= 1e-10,
               "alpha off at rho=" + fmt(rho) + " a=" + fmt(a));
        expect(rel_diff(crit.c, elliptical_c(rho, a)) <= 1e-10,
               "c off at rho=" + fmt(rho) + " a=" + fmt(a) + " (" + fmt(crit.c) + ")");
      }
    }
    return "";
  });

  h.run("functional.inverse_slope_two_sided", [] {
    std::vector<std::pair<FunctionalModel, double>> cases;
    cases.emplace_back(make_elliptical(0.5), 0.8);
    cases.emplace_back(make_lp(2.0, 0.5, 0.5), 1.0);
    cases.emplace_back(make_lp(1.0, 1.0, 1.0), 0.7);
    for (const auto& [m, a] : cases) {
      CriticalData crit = m.solve_alpha(a);
      expect(rel_diff(crit.c_left, crit.c_right) <= 1e-6,
             m.label() + ": one-sided slopes disagree");
    }
    return "";
  });

  h.run("functional.w_density_normalized", [] {
    auto integrate_density = [](const WLaw& w, std::vector<double> bps) {
      auto f = [&](double x) { return w.density(x); };
      return quad::integrate(f, 0.0, 1.0, {1e-12, 1e-10, std::move(bps)}).value;
    };
    ArcsineW arc;
    expect(std::fabs(integrate_density(arc, {}) - 1.0) <= 1e-8, "arcsine density mass");
    PowerBetaW pb(2.0, 0.5, 0.5);
    expect(std::fabs(integrate_density(pb, {}) - 1.0) <= 1e-8, "power-beta density mass");
    SingularPowerW sp(1.0 / std::sqrt(2.0), 0.09, 0.5, 0.3);
    double m = 1.0 / std::sqrt(2.0);
    expect(std::fabs(integrate_density(sp, {m - 0.09, m, m + 0.09}) - 1.0) <= 1e-8,
           "singular-power density mass");
    return "";
  });

  h.run("asymptotics.reduction_identities", [] {
    ChiLaw chi2(2);
    for (double rho : {-0.5, 0.25, 0.5}) {
      for (double a : {0.6, 0.8, 1.0}) {
        FunctionalModel m = make_elliptical(rho);
        double lhs = elliptical_closed_form(rho, a, chi2, 5.0).log_value;
        double rhs = functional_tail_approx(chi2, m, a, 5.0).log_value;
        expect(std::fabs(lhs - rhs) <= 1e-10, "elliptical reduction off at rho=" + fmt(rho));
      }
    }
    for (double p : {1.0, 2.0, 3.0}) {
      for (double a : {0.5, 0.8, 1.0}) {
        FunctionalModel m = make_lp(p, 1.0, 1.0);
        double lhs = lp_closed_form(chi2, m, a, 0.0, 0.0, 5.0).log_value;
        double rhs = functional_tail_approx(chi2, m, a, 5.0).log_value;
        expect(std::fabs(lhs - rhs) <= 1e-10, "lp reduction off at p=" + fmt(p));
      }
    }
    return "";
  });

  h.run("asymptotics.estimates_decrease_in_x", [] {
    ChiLaw chi2(2);
    for (const auto& cfg : shipped_configurations()) {
      double prev = 0.0;
      bool first = true;
      for (double x : {4.0, 6.0, 8.0}) {
        double lv;
        if (cfg.angular)
          lv = angular_tail_approx(*cfg.radial, *cfg.angular, cfg.a, 0.0, 0.0, x).log_value;
        else
          lv = functional_tail_approx(*cfg.radial, *cfg.functional, cfg.a, x).log_value;
        if (!first) expect(lv < prev, cfg.name + ": estimate not decreasing in x");
        prev = lv;
        first = false;
      }
    }
    return "";
  });

  h.run("oracle.two_oracle_agreement", [threads] {
    OracleConfig cfg;
    cfg.n_samples = 200000;
    cfg.threads = threads;
    std::ostringstream detail;
    for (const auto& sc : shipped_configurations()) {
      TailEstimate q, mc;
      if (sc.angular) {
        JointSpec spec = make_joint_spec(*sc.radial, *sc.angular, sc.a, 0.0, 0.0, 4.0);
        q = quadrature_joint_tail(*sc.radial, spec, cfg);
        mc = mc_joint_tail(*sc.radial, spec, cfg);
      } else {
        CriticalData crit = sc.functional->solve_alpha(sc.a);
        JointSpec spec = make_joint_spec(*sc.radial, *sc.functional, crit, 0.0, 0.0, 4.0);
        q = quadrature_joint_tail(*sc.radial, spec, cfg);
        mc = mc_joint_tail(*sc.radial, spec, cfg);
      }
      double dev = std::fabs(q.value() - mc.value());
      double se = *mc.rel_error * mc.value();
      expect(dev <= 3.0 * se + 1e-300, sc.name + ": oracles disagree beyond 3 SE");
    }
    return detail.str();
  });

  h.run("oracle.upper_bound_and_monotone", [] {
    ChiLaw chi2(2);
    Fgm fgm(0.5, 1.0, 1.0);
    OracleConfig cfg;
    double prev_x = 1e9;
    for (double x : {2.0, 3.0, 4.0}) {
      JointSpec spec = make_joint_spec(chi2, fgm, 1.0, 0.0, 0.0, x);
      double lp = quadrature_joint_tail(chi2, spec, cfg).log_value;
      expect(lp <= chi2.log_survival(spec.q1) + 1e-12, "p exceeds survival bound");
      expect(lp < prev_x, "p not decreasing in x");
      prev_x = lp;
    }
    double base = quadrature_joint_tail(chi2, make_joint_spec(chi2, fgm, 1.0, 0.0, 0.0, 3.0), cfg)
                      .log_value;
    double pd = quadrature_joint_tail(chi2, make_joint_spec(chi2, fgm, 1.0, 0.5, 0.0, 3.0), cfg)
                    .log_value;
    double pe = quadrature_joint_tail(chi2, make_joint_spec(chi2, fgm, 1.0, 0.0, 0.5, 3.0), cfg)
                    .log_value;
    double pa = quadrature_joint_tail(chi2, make_joint_spec(chi2, fgm, 0.8, 0.0, 0.0, 3.0), cfg)
                    .log_value;
    expect(pd < base && pe < base, "p not decreasing in delta/eta");
    expect(pa >= base, "p increasing in a");
    return "";
  });

  h.run("dependence.excess_rate_forms", [] {
    for (double a : {0.8, 1.0}) {
      double rho = 0.5;
      double alpha = elliptical_alpha(rho, a);
      double c = elliptical_c(rho, a);
      // Algebraic identity between the two printed forms (closed alpha, c).
      expect(rel_diff(alpha / (c * a + 1.0), (1.0 - a * rho) / (alpha * (1.0 - rho * rho))) <=
                 1e-12,
             "rate_x closed-form identity fails");
      expect(rel_diff(alpha * c / (a * (c * a + 1.0)),
                      (a - rho) / (a * alpha * (1.0 - rho * rho))) <= 1e-12,
             "rate_y closed-form identity fails");
      // Numeric path within root/finite-difference accuracy.
      FunctionalModel m = make_elliptical(rho);
      ExcessLimit lim = excess_limit_rates(m, a);
      expect(rel_diff(lim.rate_x, (1.0 - a * rho) / (alpha * (1.0 - rho * rho))) <= 1e-9,
             "rate_x numeric mismatch");
      expect(rel_diff(lim.rate_y, (a - rho) / (a * alpha * (1.0 - rho * rho))) <= 1e-9,
             "rate_y numeric mismatch");
    }
    return "";
  });

  h.run("dependence.excess_limit_laws", [] {
    FunctionalModel m = make_elliptical(0.5);
    ExcessLimit lim = excess_limit_rates(m, 1.0);
    for (double s : {0.3, 1.0}) {
      for (double t : {0.2, 1.5}) {
        double joint = excess_limit_survival(lim, s, t);
        double prod = excess_limit_survival(lim, s, 0.0) * excess_limit_survival(lim, 0.0, t);
        expect(rel_diff(joint, prod) <= 1e-14, "functional excess law not a product");
      }
    }
    Fgm fgm(0.5, 1.0, 1.0);
    AngularExcessLimit fgm_lim(fgm, 1.0);
    double joint = fgm_lim.survival(1.0, 1.0);
    double prod = fgm_lim.survival(1.0, 0.0) * fgm_lim.survival(0.0, 1.0);
    expect(std::fabs(joint - prod) > 1e-3, "fgm excess limit unexpectedly factorizes");
    return "";
  });

  h.run("dependence.s_limit_homogeneity", [] {
    CounterRng rng(23);
    for (int i = 0; i < 20; ++i) {
      double x = 0.05 + 0.95 * rng.next_unit();
      double y = 0.05 + 0.95 * rng.next_unit();
      double c = 0.05 + 0.95 * rng.next_unit();
      double lhs = fgm_s_limit(c * x, c * y, 1.0, 1.0);
      double rhs = c * fgm_s_limit(x, y, 1.0, 1.0);
      expect(std::fabs(lhs - rhs) <= 1e-8, "S(cx,cy) != c S(x,y)");
    }
    expect(std::fabs(fgm_s_limit(1.0, 1.0, 1.0, 1.0) - 1.0) <= 1e-10, "S(1,1) != 1");
    return "";
  });

  h.run("dependence.residual_index_closed", [] {
    ChiLaw chi2(2);
    for (double rho : {0.0, 0.5}) {
      FunctionalModel m = make_elliptical(rho);
      ResidualIndex ri = residual_index_functional(m, chi2, 1.0);
      expect(rel_diff(ri.eta, (1.0 + rho) / 2.0) <= 1e-10, "eta closed form off");
    }
    LogNormalLaw ln(0.0, 1.0);
    FunctionalModel m = make_elliptical(0.5);
    expect(residual_index_functional(m, ln, 1.0).eta == 1.0, "lambda=0 must give eta=1");
    return "";
  });

  h.run("dependence.eta_ignores_c", [] {
    // Perturb z* with a slope kink at 1/alpha that preserves the root but
    // changes the inverse slope; eta must not move.
    ChiLaw chi2(2);
    double m0 = 1.0 / std::sqrt(2.0);
    auto base = make_lp(2.0, 0.5, 0.5);
    FunctionalModel bent(
        0.0,
        [m0](double x) {
          double z = std::sqrt(std::max(0.0, 1.0 - x * x));
          double bump = (x - m0) * std::exp(-std::pow((x - m0) / 0.05, 2.0));
          return z - 0.3 * bump;
        },
        std::make_shared<PowerBetaW>(2.0, 0.5, 0.5), SignProbs::symmetric(), "lp_bent");
    CriticalData c0 = base.solve_alpha(1.0);
    CriticalData c1 = bent.solve_alpha(1.0);
    expect(rel_diff(c0.alpha, c1.alpha) <= 1e-9, "perturbation moved alpha");
    expect(std::fabs(c0.c - c1.c) > 0.05, "perturbation failed to move c");
    double e0 = residual_index_functional(base, chi2, 1.0).eta;
    double e1 = residual_index_functional(bent, chi2, 1.0).eta;
    expect(rel_diff(e0, e1) <= 1e-9, "eta moved with c");
    return "";
  });

  h.run("special.gamma_contract", [] {
    // Gamma(n+1/2) = (2n)! sqrt(pi) / (4^n n!) and factorials, spot grid on (0,30].
    long double sqrt_pi = 1.77245385090551602729816748334L;
    long double half = sqrt_pi;
    for (int n = 0; n <= 29; ++n) {
      double x = n + 0.5;
      expect(rel_diff(std::tgamma(x), static_cast<double>(half)) <= 1e-12,
             "tgamma off at " + fmt(x));
      half *= x;
    }
    long double fact = 1.0L;
    for (int n = 1; n <= 30; ++n) {
      expect(rel_diff(std::tgamma(static_cast<double>(n)), static_cast<double>(fact)) <= 1e-12,
             "tgamma off at integer " + fmt(n));
      fact *= n;
    }
    return "";
  });

  return h.results;
}

}  // namespace tailmix
