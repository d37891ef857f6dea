#include "tailmix/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "tailmix/errors.hpp"
#include "tailmix/quadrature.hpp"

namespace tailmix {

namespace {

void run_chunked(int chunks, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, chunks));
  if (threads == 1) {
    for (int c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int c = t; c < chunks; c += threads) body(c);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

void OracleConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2))
    throw InputError("OracleConfig: rel_tol must lie in (0, 1e-2]");
  if (n_samples < 1000) throw InputError("OracleConfig: n_samples must be >= 1000");
  if (chunks < 1) throw InputError("OracleConfig: chunks must be >= 1");
}

JointSpec make_joint_spec(const RadialLaw& radial, const AngularModel& model, double a,
                          double delta, double eta, double x) {
  if (!(a > 0.0 && a <= 1.0)) throw InputError("make_joint_spec: a in (0,1]");
  if (!(delta >= 0.0 && eta >= 0.0)) throw InputError("make_joint_spec: delta, eta >= 0");
  if (!(x > 0.0)) throw InputError("make_joint_spec: x > 0");
  if (!model.supports(a)) {
    std::ostringstream m;
    m << model.label() << ": level a=" << a << " not supported";
    throw InputError(m.str());
  }
  double v = radial.scaling_v(x);
  JointSpec spec;
  spec.q1 = x * (1.0 + delta / v);
  spec.q2 = a * x * (1.0 + eta / v);
  spec.r_lo = std::max(spec.q1, spec.q2);
  spec.r_breakpoints = model.joint_kink_radii(spec.q1, spec.q2);
  const AngularModel* m = &model;
  double q1 = spec.q1, q2 = spec.q2;
  spec.angular = [m, q1, q2](double r) {
    double u1 = q1 / r, u2 = q2 / r;
    if (u1 >= 1.0 || u2 >= 1.0) return 0.0;
    return m->joint_tail(std::max(u1, 0.0), std::max(u2, 0.0));
  };
  return spec;
}

JointSpec make_joint_spec_thresholds(const FunctionalModel& model, const CriticalData& crit,
                                     double q1, double q2) {
  if (!(q1 > 0.0 && q2 > 0.0)) throw InputError("make_joint_spec_thresholds: q1, q2 > 0");
  JointSpec spec;
  spec.q1 = q1;
  spec.q2 = q2;
  // Both I1=+1 branches are empty up to alpha*min(q1, q2/a): the side
  // condition kills z(W) above the window and rho W - z*(W) <= rho < a/alpha.
  double r_zero = crit.alpha * std::min(q1, q2 / crit.a);
  spec.r_lo = std::max({q1, q2 / model.u2_sup_joint(), r_zero});
  if (model.rho() > 0.0) spec.r_breakpoints.push_back(q2 / model.rho());
  const FunctionalModel* m = &model;
  spec.angular = [m, q1, q2](double r) {
    if (q1 / r >= 1.0) return 0.0;
    return m->angular_joint_survival(q1 / r, q2 / r);
  };
  return spec;
}

JointSpec make_joint_spec(const RadialLaw& radial, const FunctionalModel& model,
                          const CriticalData& crit, double delta, double eta, double x) {
  if (!(delta >= 0.0 && eta >= 0.0)) throw InputError("make_joint_spec: delta, eta >= 0");
  if (!(x > 0.0)) throw InputError("make_joint_spec: x > 0");
  double v = radial.scaling_v(crit.alpha * x);
  return make_joint_spec_thresholds(model, crit, x * (1.0 + delta / v),
                                    crit.a * x * (1.0 + eta / v));
}

JointSpec make_marginal_spec(const std::function<double(double)>& marginal_survival,
                             double u_sup, double q) {
  if (!(q > 0.0)) throw InputError("make_marginal_spec: q > 0");
  JointSpec spec;
  spec.q1 = q;
  spec.q2 = 0.0;
  spec.r_lo = q / u_sup;
  spec.angular = [marginal_survival, q](double r) { return marginal_survival(q / r); };
  return spec;
}

TailEstimate quadrature_joint_tail(const RadialLaw& radial, const JointSpec& spec,
                                   const OracleConfig& cfg) {
  cfg.validate();
  const double anchor = spec.r_lo;
  const double lsf0 = radial.log_survival(anchor);
  const double v0 = radial.scaling_v(anchor);
  const double w0 = anchor > 0.0 ? v0 / anchor : 1.0;

  auto r_of = [&](double s) { return anchor * (1.0 + s / v0); };
  auto f = [&](double s) {
    double r = r_of(s);
    double q = spec.angular(r);
    if (q <= 0.0) return 0.0;
    return q * std::exp(radial.log_density(r) - lsf0) / w0;
  };
  // Angular survivals are bounded by 2 (the FGM tail functional tops out at
  // 1+K < 2), so the mass beyond s is at most 2 * sf(r(s))/sf(anchor).
  auto remainder = [&](double s) {
    return 2.0 * std::exp(radial.log_survival(r_of(s)) - lsf0);
  };
  std::vector<double> bps;
  for (double rb : spec.r_breakpoints)
    if (rb > anchor) bps.push_back(v0 * (rb / anchor - 1.0));

  quad::Result res = quad::integrate_tail(f, 0.0, remainder, cfg.rel_tol, bps);
  TailEstimate e = make_estimate(
      Method::quadrature,
      {{"sf_anchor", lsf0}, {"angular_integral", std::log(res.value)}});
  e.rel_error = res.value > 0.0 ? res.abs_error / res.value : 0.0;
  return e;
}

namespace {

TailEstimate mc_core(const RadialLaw& radial, const JointSpec& spec, const OracleConfig& cfg,
                     const std::function<double(CounterRng&, double)>& value_at) {
  cfg.validate();
  const double anchor = spec.r_lo;
  const double lsf0 = radial.log_survival(anchor);
  ConditionalSampler draw_r(radial, anchor);

  const long per_chunk = cfg.n_samples / cfg.chunks;
  const long n_total = per_chunk * cfg.chunks;
  if (per_chunk < 1) throw InputError("mc_joint_tail: fewer samples than chunks");

  std::vector<double> sums(cfg.chunks, 0.0), sums2(cfg.chunks, 0.0);
  run_chunked(cfg.chunks, cfg.threads, [&](int c) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(c));
    double s = 0.0, s2 = 0.0;
    for (long i = 0; i < per_chunk; ++i) {
      double r = draw_r(rng.next_unit());
      double q = value_at(rng, r);
      s += q;
      s2 += q * q;
    }
    sums[c] = s;
    sums2[c] = s2;
  });

  double sum = 0.0, sum2 = 0.0;
  for (int c = 0; c < cfg.chunks; ++c) {
    sum += sums[c];
    sum2 += sums2[c];
  }
  double mean = sum / n_total;
  if (!(mean > 0.0)) throw NumericError("mc_joint_tail: zero effective samples");
  double var = std::max(0.0, (sum2 - n_total * mean * mean) / (n_total - 1.0));
  double se = std::sqrt(var / n_total);

  TailEstimate e = make_estimate(Method::monte_carlo,
                                 {{"sf_anchor", lsf0}, {"mean_q", std::log(mean)}});
  e.rel_error = se / mean;
  return e;
}

}  // namespace

TailEstimate mc_joint_tail(const RadialLaw& radial, const JointSpec& spec,
                           const OracleConfig& cfg) {
  return mc_core(radial, spec, cfg,
                 [&spec](CounterRng&, double r) { return spec.angular(r); });
}

TailEstimate mc_joint_tail_indicator(
    const RadialLaw& radial, const JointSpec& spec,
    const std::function<std::pair<double, double>(CounterRng&)>& draw_pair,
    const OracleConfig& cfg) {
  double q1 = spec.q1, q2 = spec.q2;
  return mc_core(radial, spec, cfg, [&draw_pair, q1, q2](CounterRng& rng, double r) {
    auto [u1, u2] = draw_pair(rng);
    return (u1 * r > q1 && u2 * r > q2) ? 1.0 : 0.0;
  });
}

ConvergenceTable convergence_table(const std::function<TailEstimate(double)>& approx,
                                   const std::function<TailEstimate(double)>& oracle,
                                   std::span<const double> x_grid) {
  if (x_grid.size() < 3) throw InputError("convergence_table: need >= 3 grid points");
  if (!std::is_sorted(x_grid.begin(), x_grid.end()))
    throw InputError("convergence_table: x grid must be increasing");
  ConvergenceTable table;
  for (double x : x_grid) {
    ConvergenceRow row{x, approx(x), oracle(x), 0.0};
    row.ratio = std::exp(row.approx.log_value - row.oracle.log_value);
    table.rows.push_back(std::move(row));
  }
  std::size_t n = table.rows.size();
  double a = std::fabs(table.rows[n - 3].ratio - 1.0);
  double b = std::fabs(table.rows[n - 2].ratio - 1.0);
  double c = std::fabs(table.rows[n - 1].ratio - 1.0);
  table.trend_ok = (b <= a + 1e-12) && (c <= b + 1e-12);
  return table;
}

MixtureView make_view(const AngularModel& model) {
  MixtureView v;
  const AngularModel* m = &model;
  v.marginal1 = [m](double t) { return t >= 1.0 ? 0.0 : m->marginal_survival1(std::max(t, 0.0)); };
  v.marginal2 = [m](double t) { return t >= 1.0 ? 0.0 : m->marginal_survival2(std::max(t, 0.0)); };
  v.joint = [m](double q1, double q2) {
    JointSpec spec;
    spec.q1 = q1;
    spec.q2 = q2;
    spec.r_lo = std::max(q1, q2);
    spec.r_breakpoints = m->joint_kink_radii(q1, q2);
    spec.angular = [m, q1, q2](double r) {
      double u1 = q1 / r, u2 = q2 / r;
      if (u1 >= 1.0 || u2 >= 1.0) return 0.0;
      return m->joint_tail(std::max(u1, 0.0), std::max(u2, 0.0));
    };
    return spec;
  };
  return v;
}

MixtureView make_view(const FunctionalModel& model, const CriticalData& crit) {
  MixtureView v;
  const FunctionalModel* m = &model;
  v.u2_sup = model.u2_sup();
  v.marginal1 = [m](double t) { return m->marginal_survival_u1(t); };
  v.marginal2 = [m](double t) { return m->marginal_survival_u2(t); };
  v.joint = [m, crit](double q1, double q2) {
    return make_joint_spec_thresholds(*m, crit, q1, q2);
  };
  return v;
}

TailEstimate marginal_tail_quadrature(const RadialLaw& radial,
                                      const std::function<double(double)>& marginal_survival,
                                      double u_sup, double q, const OracleConfig& cfg) {
  return quadrature_joint_tail(radial, make_marginal_spec(marginal_survival, u_sup, q), cfg);
}

double marginal_quantile(const RadialLaw& radial,
                         const std::function<double(double)>& marginal_survival,
                         double u_sup, double u, const OracleConfig& cfg) {
  if (!(u > 1.0)) throw InputError("marginal_quantile: u must exceed 1");
  double target = -std::log(u);
  auto log_tail = [&](double q) {
    return marginal_tail_quadrature(radial, marginal_survival, u_sup, q, cfg).log_value;
  };
  double hi = radial.quantile_b(u) * u_sup;  // P(RU > hi) <= sf(hi/u_sup) = 1/u
  double lo = hi;
  while (log_tail(lo) <= target) {
    lo *= 0.5;
    if (lo < 1e-12) throw NumericError("marginal_quantile: bracket failure");
  }
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    if (log_tail(mid) > target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-10 * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace tailmix
