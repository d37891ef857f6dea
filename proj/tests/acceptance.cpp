// Acceptance suite: one check per shipped guarantee, each printing a
// [PASS]/[FAIL] line.  Run all or a single one with --criterion N.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "tailmix/asymptotics.hpp"
#include "tailmix/dependence.hpp"
#include "tailmix/oracle.hpp"
#include "tailmix/verify.hpp"

using namespace tailmix;

namespace {

int g_threads = 2;

struct Criterion {
  int id;
  std::string name;
  std::function<std::string()> body;  // empty string = pass, else failure detail
};

OracleConfig oracle_cfg(long n = 1000000) {
  OracleConfig cfg;
  cfg.rel_tol = 1e-8;
  cfg.n_samples = n;
  cfg.seed = 20260810;
  cfg.chunks = 64;
  cfg.threads = g_threads;
  return cfg;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// |ratio-1| strictly decreasing along the grid, terminal below `cap`.
std::string check_ratio_trend(const std::vector<double>& ratios, double cap,
                              const std::string& label) {
  double prev = 1e300;
  for (double r : ratios) {
    double dev = std::fabs(r - 1.0);
    if (dev >= prev)
      return label + ": |ratio-1| not strictly decreasing (" + fmt(dev) + " after " +
             fmt(prev) + ")";
    prev = dev;
  }
  if (prev > cap) return label + ": terminal |ratio-1| = " + fmt(prev) + " > " + fmt(cap);
  return "";
}

std::string criterion1() {
  ChiLaw chi2(2);
  const double rho = 0.3,
               a = 0.8;
  OracleConfig cfg = oracle_cfg();
  std::vector<double> ratios;
  for (double x : {4.0, 6.0, 8.0, 10.0}) {
    FunctionalModel ell = make_elliptical(rho);
    CriticalData crit = ell.solve_alpha(a);
    TailEstimate oracle =
        quadrature_joint_tail(chi2, make_joint_spec(chi2, ell, crit, 0.0, 0.0, x), cfg);
    TailEstimate closed = elliptical_closed_form(rho, a, chi2, x);
    ratios.push_back(std::exp(oracle.log_value - closed.log_value));
  }
  return check_ratio_trend(ratios, 0.15, "elliptical closed form");
}

std::string criterion2() {
  ChiLaw chi2(2);
  OracleConfig cfg = oracle_cfg();
  MinDominated md(1.0);
  Fgm fgm(0.5, 1.0, 1.0);
  for (const AngularModel* m : {static_cast<const AngularModel*>(&md),
                                static_cast<const AngularModel*>(&fgm)}) {
    std::vector<double> ratios;
    for (double x : {4.0, 6.0, 8.0, 10.0}) {
      TailEstimate oracle =
          quadrature_joint_tail(chi2, make_joint_spec(chi2, *m, 1.0, 0.0, 0.0, x), cfg);
      TailEstimate approx = angular_tail_approx(chi2, *m, 1.0, 0.0, 0.0, x);
      ratios.push_back(std::exp(oracle.log_value - approx.log_value));
    }
    std::string err = check_ratio_trend(ratios, 0.20, m->label());
    if (!err.empty()) return err;
  }
  return "";
}

std::string criterion3() {
  ChiLaw chi2(2);
  const double x = 5.0;
  for (double rho : {-0.5, 0.25, 0.5}) {
    for (double a : {0.6, 0.8, 1.0}) {
      FunctionalModel ell = make_elliptical(rho);
      double lhs = elliptical_closed_form(rho, a, chi2, x).log_value;
      double rhs = functional_tail_approx(chi2, ell, a, x).log_value;
      if (std::fabs(lhs - rhs) > 1e-10)
        return "elliptical reduction off by " + fmt(std::fabs(lhs - rhs)) + " at rho=" +
               fmt(rho) + ", a=" + fmt(a);
    }
  }
  for (double p : {1.0, 2.0, 3.0}) {
    for (double a : {0.5, 0.8, 1.0}) {
      FunctionalModel lp = make_lp(p, 1.0, 1.0);
      double lhs = lp_closed_form(chi2, lp, a, 0.0, 0.0, x).log_value;
      double rhs = functional_tail_approx(chi2, lp, a, x).log_value;
      if (std::fabs(lhs - rhs) > 1e-10)
        return "lp reduction off by " + fmt(std::fabs(lhs - rhs)) + " at p=" + fmt(p) +
               ", a=" + fmt(a);
    }
  }
  return "";
}

std::string criterion4() {
  for (double g : {0.0, 0.5, 1.0, 2.0}) {
    MinDominated m(g);
    double j = j_integral(m, 1.0, 0.0, 0.0);
    if (std::fabs(j - std::tgamma(g + 1.0)) > 1e-8)
      return "J_00 != Gamma(gamma+1) at gamma=" + fmt(g) + " (err " +
             fmt(std::fabs(j - std::tgamma(g + 1.0))) + ")";
  }
  MinDominated md(1.0);
  Fgm fgm(0.5, 1.0, 1.0);
  LinearCombo lc(0.5, 0.5, 1.0, 1.0);
  for (const AngularModel* m :
       {static_cast<const AngularModel*>(&md), static_cast<const AngularModel*>(&fgm),
        static_cast<const AngularModel*>(&lc)}) {
    for (double d : {0.0, 0.5, 1.0}) {
      for (double e : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        if (e > d) continue;
        double lhs = j_integral(*m, 1.0, d, e);
        double rhs = std::exp(-d) * j_integral(*m, 1.0, 0.0, e - d);
        if (std::fabs(lhs - rhs) > 1e-8)
          return m->label() + ": J shift identity off by " + fmt(std::fabs(lhs - rhs)) +
                 " at delta=" + fmt(d) + ", eta=" + fmt(e);
      }
    }
  }
  return "";
}

std::string criterion5() {
  ChiLaw chi2(2);
  OracleConfig cfg = oracle_cfg();
  for (double rho : {0.0, 0.5}) {
    FunctionalModel ell = make_elliptical(rho);
    ResidualIndex closed = residual_index_functional(ell, chi2, 1.0);
    double target = (1.0 + rho) / 2.0;
    if (std::fabs(closed.eta - target) > 1e-10)
      return "closed-form eta off at rho=" + fmt(rho);
    std::vector<double> grid{1e2, 1e3, 1e4, 1e5, 1e6};
    ResidualIndex emp = empirical_eta(chi2, ell, grid, cfg);
    if (std::fabs(emp.eta - target) > 0.05)
      return "empirical eta " + fmt(emp.eta) + " misses " + fmt(target) + " at rho=" +
             fmt(rho);
  }
  CounterRng rng(55);
  for (int i = 0; i < 20; ++i) {
    double x = 0.05 + 0.95 * rng.next_unit();
    double y = 0.05 + 0.95 * rng.next_unit();
    double c = 0.05 + 0.95 * rng.next_unit();
    double lhs = fgm_s_limit(c * x, c * y, 1.0, 1.0);
    double rhs = c * fgm_s_limit(x, y, 1.0, 1.0);
    if (std::fabs(lhs - rhs) > 1e-8)
      return "S homogeneity off by " + fmt(std::fabs(lhs - rhs));
  }
  return "";
}

std::string criterion6() {
  ChiLaw chi2(2);
  FunctionalModel ell = make_elliptical(0.5);
  auto run = [&](double x, long proposals) {
    ExcessConfig cfg;
    cfg.n_proposals = proposals;
    cfg.seed = 20260810;
    cfg.chunks = 64;
    cfg.threads = g_threads;
    return excess_empirical(chi2, ell, 1.0, x, cfg);
  };
  ExcessEmpirical at5 = run(5.0, 2000000);
  ExcessEmpirical at8 = run(8.0, 3000000);
  ExcessEmpirical at10 = run(10.0, 10000000);
  if (at8.n_accepted < 1000) return "fewer than 1000 exceedances at x=8";
  if (at8.ks_x > 0.05 || at8.ks_y > 0.05)
    return "KS at x=8 too large (" + fmt(at8.ks_x) + ", " + fmt(at8.ks_y) + ")";
  if (std::fabs(at8.corr) > 0.05)
    return "excess correlation " + fmt(at8.corr) + " too large";
  if (!(at10.ks_x < at5.ks_x && at10.ks_y < at5.ks_y))
    return "KS not improving from x=5 (" + fmt(at5.ks_x) + "," + fmt(at5.ks_y) +
           ") to x=10 (" + fmt(at10.ks_x) + "," + fmt(at10.ks_y) + ")";
  return "";
}

std::string criterion7() {
  OracleConfig cfg = oracle_cfg(1000000);
  for (const ShippedConfig& sc : shipped_configurations()) {
    JointSpec spec;
    const RadialLaw& radial = *sc.radial;
    if (sc.angular) {
      spec = make_joint_spec(radial, *sc.angular, sc.a, 0.0, 0.0, 4.0);
    } else {
      CriticalData crit = sc.functional->solve_alpha(sc.a);
      spec = make_joint_spec(radial, *sc.functional, crit, 0.0, 0.0, 4.0);
    }
    TailEstimate q = quadrature_joint_tail(radial, spec, cfg);
    TailEstimate mc = mc_joint_tail(radial, spec, cfg);
    double se = *mc.rel_error * mc.value();
    if (std::fabs(q.value() - mc.value()) > 3.0 * se)
      return sc.name + ": |quadrature - MC| = " + fmt(std::fabs(q.value() - mc.value())) +
             " > 3 SE = " + fmt(3.0 * se);
    TailEstimate mc2 = mc_joint_tail(radial, spec, cfg);
    if (mc.log_value != mc2.log_value || *mc.rel_error != *mc2.rel_error)
      return sc.name + ": identical seeds produced different estimates";
  }
  return "";
}

std::string criterion8() {
  ChiLaw chi2(2);
  OracleConfig cfg = oracle_cfg();
  const std::vector<double> us{1e2, 1e3, 1e4};

  FunctionalModel ell = make_elliptical(0.5);
  CriticalData crit = ell.solve_alpha(1.0);
  MixtureView ve = make_view(ell, crit);
  double prev = 1e300;
  for (double u : us) {
    double l = tail_dependence_l(chi2, ve, 1.0, 1.0, u, cfg);
    if (l >= prev) return "elliptical l(1,1) not strictly decreasing at u=" + fmt(u);
    prev = l;
  }

  Fgm fgm(0.5, 1.0, 1.0);
  MixtureView vf = make_view(fgm);
  prev = 1e300;
  for (double u : us) {
    double l = tail_dependence_l(chi2, vf, 1.0, 1.0, u, cfg);
    if (l >= prev) return "fgm l(1,1) not strictly decreasing at u=" + fmt(u);
    prev = l;
  }

  MinDominated md(1.0);
  MixtureView vm = make_view(md);
  for (double u : us) {
    double l = tail_dependence_l(chi2, vm, 1.0, 1.0, u, cfg);
    if (l <= 0.5) return "min-dominated l(1,1) = " + fmt(l) + " fell to 0.5 at u=" + fmt(u);
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
      g_threads = std::atoi(argv[++i]);
  }

  std::vector<Criterion> criteria{
      {1, "elliptical closed-form convergence", criterion1},
      {2, "angular-limit approximation convergence", criterion2},
      {3, "closed-form reduction identities", criterion3},
      {4, "J-integral identities", criterion4},
      {5, "residual dependence index", criterion5},
      {6, "conditional excess limit", criterion6},
      {7, "oracle cross-validation and determinism", criterion7},
      {8, "asymptotic-independence trend", criterion8},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    std::string err;
    try {
      err = c.body();
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (err.empty()) {
      std::printf("[PASS] %d: %s (%.1fs)\n", c.id, c.name.c_str(), secs);
    } else {
      std::printf("[FAIL] %d: %s (%.1fs) -- %s\n", c.id, c.name.c_str(), secs, err.c_str());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
