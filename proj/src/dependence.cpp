#include "tailmix/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "tailmix/errors.hpp"
#include "tailmix/quadrature.hpp"

namespace tailmix {

ExcessLimit excess_limit_rates(const FunctionalModel& model, double a) {
  CriticalData crit = model.solve_alpha(a);
  ExcessLimit lim;
  lim.a = a;
  lim.alpha = crit.alpha;
  lim.c = crit.c;
  double ca = crit.c * a;
  lim.rate_x = crit.alpha / (ca + 1.0);
  lim.rate_y = crit.alpha * crit.c / (a * (ca + 1.0));
  std::ostringstream sc;
  sc << "g(n) = w(alpha n), alpha = " << crit.alpha
     << "; differs from g = w by alpha^(lambda-1) under regular variation";
  lim.scaling = sc.str();
  return lim;
}

double excess_limit_survival(const ExcessLimit& lim, double s, double t) {
  if (!(s >= 0.0 && t >= 0.0)) throw InputError("excess_limit_survival: s, t >= 0");
  return std::exp(-s * lim.rate_x - t * lim.rate_y);
}

namespace {

double ks_distance_exp(std::vector<double> sample, double rate) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double f = -std::expm1(-rate * sample[i]);
    ks = std::max(ks, std::fabs(f - (i + 1.0) / n));
    ks = std::max(ks, std::fabs(f - i / n));
  }
  return ks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, sa = 0.0, sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    sa += da * da;
    sb += db * db;
  }
  return sab / std::sqrt(sa * sb);
}

}  // namespace

ExcessEmpirical excess_empirical(const RadialLaw& radial, const FunctionalModel& model,
                                 double a, double x, const ExcessConfig& cfg) {
  if (!(x > 0.0)) throw InputError("excess_empirical: x > 0");
  if (!model.w_law().continuous_density())
    throw InputError("excess_empirical: requires a continuous W density");
  CriticalData crit = model.solve_alpha(a);
  ExcessLimit lim = excess_limit_rates(model, a);
  JointSpec spec = make_joint_spec_thresholds(model, crit, x, a * x);
  ConditionalSampler draw_r(radial, spec.r_lo);
  const double wg = radial.scaling_w(crit.alpha * x);

  const long per_chunk = cfg.n_proposals / cfg.chunks;
  std::vector<std::vector<std::pair<double, double>>> buckets(cfg.chunks);
  int threads = std::max(1, std::min(cfg.threads, cfg.chunks));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int c = t; c < cfg.chunks; c += threads) {
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(c));
        auto& out = buckets[c];
        for (long i = 0; i < per_chunk; ++i) {
          double r = draw_r(rng.next_unit());
          auto [u1, u2] = model.sample(rng);
          if (u1 * r > x && u2 * r > a * x)
            out.emplace_back(wg * (u1 * r - x), wg * (u2 * r - a * x));
        }
      }
    });
  }
  for (auto& th : pool) th.join();

  std::vector<double> ex, ey;
  for (const auto& b : buckets)
    for (const auto& [e1, e2] : b) {
      ex.push_back(e1);
      ey.push_back(e2);
    }
  if (static_cast<long>(ex.size()) < cfg.min_accepted) {
    std::ostringstream msg;
    msg << "excess_empirical: only " << ex.size() << " exceedances accepted (need "
        << cfg.min_accepted << "); increase n_proposals or lower x";
    throw NumericError(msg.str());
  }

  ExcessEmpirical out;
  out.n_accepted = static_cast<long>(ex.size());
  out.rate_x = lim.rate_x;
  out.rate_y = lim.rate_y;
  out.ks_x = ks_distance_exp(ex, lim.rate_x);
  out.ks_y = ks_distance_exp(ey, lim.rate_y);
  out.corr = pearson(ex, ey);
  for (double p : {0.9, 0.75, 0.5, 0.25, 0.1, 0.05}) {
    ExcessEmpirical::Row row;
    row.t = -std::log(p) / lim.rate_x;
    double tx = row.t, ty = -std::log(p) / lim.rate_y;
    row.exp_x = p;
    row.exp_y = p;
    row.emp_x =
        std::count_if(ex.begin(), ex.end(), [tx](double e) { return e > tx; }) /
        static_cast<double>(ex.size());
    row.emp_y =
        std::count_if(ey.begin(), ey.end(), [ty](double e) { return e > ty; }) /
        static_cast<double>(ey.size());
    out.survival_rows.push_back(row);
  }
  return out;
}

AngularExcessLimit::AngularExcessLimit(const AngularModel& model, double a)
    : model_(&model), a_(a), j00_(j_integral(model, a, 0.0, 0.0)) {}

double AngularExcessLimit::survival(double s, double t) const {
  if (!(s >= 0.0 && t >= 0.0)) throw InputError("AngularExcessLimit: s, t >= 0");
  if (s == 0.0 && t == 0.0) return 1.0;
  return j_integral(*model_, a_, s, t) / j00_;
}

double fgm_s_limit(double x, double y, double gamma1, double gamma2) {
  if (!(x > 0.0 && y > 0.0)) throw InputError("fgm_s_limit: x, y > 0");
  if (!(gamma1 >= 0.0 && gamma2 >= 0.0)) throw InputError("fgm_s_limit: gammas >= 0");
  const double lx = std::log(x), ly = std::log(y);
  auto powp = [](double b, double g) {
    if (b <= 0.0) return 0.0;
    return g == 0.0 ? 1.0 : std::pow(b, g);
  };
  auto f = [&](double t) {
    return powp(t + lx, gamma1) * powp(t + ly, gamma2) * std::exp(-t);
  };
  const double g = gamma1 + gamma2;
  const double shift = std::fabs(lx) + std::fabs(ly);
  auto remainder = [&](double T) {
    if (T + shift < 2.0 * (g + 1.0)) return 1.0;
    return 2.0 * std::pow(T + shift, g) * std::exp(-T);
  };
  quad::Result r = quad::integrate_tail(f, 0.0, remainder, 1e-12, {-lx, -ly});
  return r.value / std::tgamma(g + 1.0);
}

ResidualIndex residual_index_functional(const FunctionalModel& model, const RadialLaw& radial,
                                        double a) {
  CriticalData crit = model.solve_alpha(a);
  double lambda = radial.weibull_index();
  ResidualIndex out;
  out.eta = std::pow(crit.alpha, -lambda);
  out.source = ResidualIndex::Source::closed_form;
  return out;
}

ResidualIndex empirical_eta(const RadialLaw& radial, const FunctionalModel& model,
                            std::span<const double> u_grid, const OracleConfig& cfg) {
  if (u_grid.size() < 5) throw InputError("empirical_eta: need >= 5 grid points");
  if (!std::is_sorted(u_grid.begin(), u_grid.end()))
    throw InputError("empirical_eta: u grid must be increasing");
  CriticalData crit = model.solve_alpha(1.0);
  MixtureView view = make_view(model, crit);

  std::vector<double> lu, ls;
  double b1_last = 0.0, b2_last = 0.0;
  for (double u : u_grid) {
    double b1 = marginal_quantile(radial, view.marginal1, view.u1_sup, u, cfg);
    double b2 = marginal_quantile(radial, view.marginal2, view.u2_sup, u, cfg);
    TailEstimate su = quadrature_joint_tail(radial, view.joint(b1, b2), cfg);
    lu.push_back(std::log(u));
    ls.push_back(su.log_value);
    b1_last = b1;
    b2_last = b2;
  }

  // Drop the smallest u until consecutive local slopes stabilize within 5%.
  std::size_t start = 0;
  while (lu.size() - start > 3) {
    double s0 = (ls[start + 1] - ls[start]) / (lu[start + 1] - lu[start]);
    double s1 = (ls[start + 2] - ls[start + 1]) / (lu[start + 2] - lu[start + 1]);
    if (std::fabs(s0 - s1) <= 0.05 * std::fabs(s1)) break;
    ++start;
  }

  const std::size_t n = lu.size() - start;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = start; i < lu.size(); ++i) {
    mx += lu[i];
    my += ls[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = start; i < lu.size(); ++i) {
    sxy += (lu[i] - mx) * (ls[i] - my);
    sxx += (lu[i] - mx) * (lu[i] - mx);
  }
  if (!(sxx > 0.0)) throw NumericError("empirical_eta: degenerate regression");
  double slope = sxy / sxx;
  if (!(slope < 0.0)) throw NumericError("empirical_eta: nonnegative regression slope");

  ResidualIndex out;
  out.eta = -1.0 / slope;
  out.source = ResidualIndex::Source::empirical;
  out.slope = slope;
  out.points_used = static_cast<int>(n);
  out.xi_gap = radial.scaling_w(b2_last) * (b2_last - b1_last);
  return out;
}

double tail_dependence_l(const RadialLaw& radial, const MixtureView& view, double s, double t,
                         double u, const OracleConfig& cfg) {
  if (!(s > 0.0 && t > 0.0)) throw InputError("tail_dependence_l: s, t > 0");
  if (!(u > std::max(s, t))) throw InputError("tail_dependence_l: u must exceed max(s,t)");
  double b1 = marginal_quantile(radial, view.marginal1, view.u1_sup, u / s, cfg);
  double b2 = marginal_quantile(radial, view.marginal2, view.u2_sup, u / t, cfg);
  TailEstimate joint = quadrature_joint_tail(radial, view.joint(b1, b2), cfg);
  return std::exp(joint.log_value + std::log(u)) / std::min(s, t);
}

}  // namespace tailmix
