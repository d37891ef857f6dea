#include "tailmix/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tailmix/errors.hpp"
#include "tailmix/special.hpp"

namespace tailmix {

namespace {

constexpr int kScanGrid = 4096;

}  // namespace

// --------------------------------------------------------------------------
// W laws

double WLaw::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("WLaw::quantile: p must lie in [0,1]");
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-16) break;
  }
  return 0.5 * (lo + hi);
}

double ArcsineW::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 2.0 / M_PI * std::asin(x);
}

double ArcsineW::density(double x) const {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return 2.0 / (M_PI * std::sqrt(1.0 - x * x));
}

double ArcsineW::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("ArcsineW::quantile: p must lie in [0,1]");
  return std::sin(0.5 * M_PI * p);
}

PowerBetaW::PowerBetaW(double p, double a, double b) : p_(p), a_(a), b_(b) {
  if (!(p > 0.0) || !(a > 0.0) || !(b > 0.0))
    throw InputError("PowerBetaW: parameters must be positive");
}

double PowerBetaW::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return special::reg_inc_beta(a_, b_, std::pow(x, p_));
}

double PowerBetaW::density(double x) const {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  double v = std::pow(x, p_);
  double log_beta = std::lgamma(a_) + std::lgamma(b_) - std::lgamma(a_ + b_);
  double log_g = (a_ - 1.0) * std::log(v) + (b_ - 1.0) * std::log1p(-v) - log_beta;
  return p_ * std::pow(x, p_ - 1.0) * std::exp(log_g);
}

double PowerBetaW::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("PowerBetaW::quantile: p must lie in [0,1]");
  return std::pow(special::reg_inc_beta_inv(a_, b_, p), 1.0 / p_);
}

PointMassW::PointMassW(double x0) : x0_(x0) {
  if (!(x0 > 0.0 && x0 <= 1.0)) throw InputError("PointMassW: x0 must lie in (0,1]");
}
double PointMassW::cdf(double x) const { return x < x0_ ? 0.0 : 1.0; }
double PointMassW::density(double) const { return 0.0; }
double PointMassW::quantile(double) const { return x0_; }

SingularPowerW::SingularPowerW(double center, double halfwidth, double kappa,
                               double inner_mass)
    : m_(center), d_(halfwidth), kappa_(kappa) {
  if (!(center - halfwidth > 0.0 && center + halfwidth < 1.0))
    throw InputError("SingularPowerW: window must lie inside (0,1)");
  if (!(kappa > 0.0 && kappa <= 1.0)) throw InputError("SingularPowerW: kappa in (0,1]");
  if (!(inner_mass > 0.0 && inner_mass < 1.0))
    throw InputError("SingularPowerW: inner_mass in (0,1)");
  c0_ = 0.5 * inner_mass / std::pow(halfwidth, kappa);
  rho_out_ = (1.0 - inner_mass) / (1.0 - 2.0 * halfwidth);
}

double SingularPowerW::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double h_low = rho_out_ * (m_ - d_);
  double h_mid = h_low + c0_ * std::pow(d_, kappa_);  // value at the center
  if (x <= m_ - d_) return rho_out_ * x;
  if (x <= m_) return h_mid - c0_ * std::pow(m_ - x, kappa_);
  if (x <= m_ + d_) return h_mid + c0_ * std::pow(x - m_, kappa_);
  return h_mid + c0_ * std::pow(d_, kappa_) + rho_out_ * (x - m_ - d_);
}

double SingularPowerW::density(double x) const {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  if (x <= m_ - d_ || x >= m_ + d_) return rho_out_;
  if (x == m_) return std::numeric_limits<double>::infinity();
  return c0_ * kappa_ * std::pow(std::fabs(x - m_), kappa_ - 1.0);
}

double SingularPowerW::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("SingularPowerW::quantile: p in [0,1]");
  double h_low = rho_out_ * (m_ - d_);
  double h_mid = h_low + c0_ * std::pow(d_, kappa_);
  double h_high = h_mid + c0_ * std::pow(d_, kappa_);
  if (p <= h_low) return p / rho_out_;
  if (p <= h_mid) return m_ - std::pow((h_mid - p) / c0_, 1.0 / kappa_);
  if (p <= h_high) return m_ + std::pow((p - h_mid) / c0_, 1.0 / kappa_);
  return m_ + d_ + (p - h_high) / rho_out_;
}

double SingularPowerW::concentration_factor(double k1, double k2) const {
  if (!(k1 < 0.0 && k2 > 0.0)) throw InputError("concentration_factor: need K1 < 0 < K2");
  return c0_ * (std::pow(k2, kappa_) + std::pow(-k1, kappa_));
}

// --------------------------------------------------------------------------
// FunctionalModel

FunctionalModel::FunctionalModel(double rho, std::function<double(double)> zstar,
                                 std::shared_ptr<const WLaw> w, SignProbs signs,
                                 std::string label, Traits traits)
    : rho_(rho),
      zstar_(std::move(zstar)),
      w_(std::move(w)),
      signs_(signs),
      label_(std::move(label)),
      traits_(traits) {
  if (!(rho > -1.0 && rho < 1.0)) throw InputError("FunctionalModel: rho in (-1,1)");
  double sum = signs.mm + signs.mp + signs.pm + signs.pp;
  if (std::fabs(sum - 1.0) > 1e-12 || signs.mm < 0 || signs.mp < 0 || signs.pm < 0 ||
      signs.pp <= 0.0)
    throw InputError("FunctionalModel: sign probabilities must be nonnegative, sum to 1, pp > 0");

  // Decompose each sign branch into monotone pieces (turning points located
  // by a slope-sign scan plus golden-section refinement).
  for (int i1 : {-1, 1}) {
    for (int i2 : {-1, 1}) {
      auto g = [&](double x) { return branch_value(i1, i2, x); };
      std::vector<double>& bounds = piece_bounds_[branch_index(i1, i2)];
      bounds.push_back(0.0);
      double prev_x = 0.0, prev_v = g(0.0);
      int prev_sign = 0;
      for (int i = 1; i <= kScanGrid; ++i) {
        double x = static_cast<double>(i) / kScanGrid;
        double v = g(x);
        double d = v - prev_v;
        int sign = d > 1e-15 ? 1 : (d < -1e-15 ? -1 : prev_sign);
        if (prev_sign != 0 && sign != 0 && sign != prev_sign) {
          double lo = std::max(0.0, prev_x - 2.0 / kScanGrid);
          double hi = std::min(1.0, x + 1.0 / kScanGrid);
          auto h = prev_sign > 0 ? std::function<double(double)>(g)
                                 : std::function<double(double)>([&](double y) { return -g(y); });
          double a = lo, b = hi;
          const double gr = 0.6180339887498949;
          double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
          double f1 = h(x1), f2 = h(x2);
          for (int k = 0; k < 80; ++k) {
            if (f1 < f2) {
              a = x1;
              x1 = x2;
              f1 = f2;
              x2 = a + gr * (b - a);
              f2 = h(x2);
            } else {
              b = x2;
              x2 = x1;
              f2 = f1;
              x1 = b - gr * (b - a);
              f1 = h(x1);
            }
          }
          bounds.push_back(0.5 * (a + b));
        }
        if (sign != 0) prev_sign = sign;
        prev_x = x;
        prev_v = v;
      }
      bounds.push_back(1.0);
      std::sort(bounds.begin(), bounds.end());
    }
  }

  auto sup_of = [&](int i1, int i2) {
    auto g = [&](double x) { return branch_value(i1, i2, x); };
    double best = -std::numeric_limits<double>::infinity();
    for (double b : piece_bounds_[branch_index(i1, i2)]) best = std::max(best, g(b));
    return std::fabs(best - 1.0) < 1e-9 ? 1.0 : best;
  };
  u2_sup_joint_ = std::max(sup_of(1, 1), sup_of(1, -1));
  u2_sup_all_ = std::max({u2_sup_joint_, sup_of(-1, 1), sup_of(-1, -1)});
}

double FunctionalModel::w_density_at(double x) const {
  if (!(x > 0.0 && x < 1.0)) throw InputError("w_density_at: x must lie in (0,1)");
  return w_->density(x);
}

double FunctionalModel::branch_prob_above(int i1, int i2, double lo, double thr) const {
  lo = std::max(lo, 0.0);
  if (lo >= 1.0) return 0.0;
  auto g = [&](double x) { return branch_value(i1, i2, x); };
  const std::vector<double>& bounds = piece_bounds_[branch_index(i1, i2)];
  double prob = 0.0;
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    double a = std::max(bounds[k], lo), b = bounds[k + 1];
    if (!(b > a)) continue;
    double ga = g(a), gb = g(b);
    double sub_lo, sub_hi;
    if (ga > thr && gb > thr) {
      sub_lo = a;
      sub_hi = b;
    } else if (ga <= thr && gb <= thr) {
      continue;
    } else {
      // Monotone within the piece: locate the single crossing.
      double l = a, r = b;
      bool lo_above = ga > thr;
      for (int it = 0; it < 70; ++it) {
        double mid = 0.5 * (l + r);
        if ((g(mid) > thr) == lo_above)
          l = mid;
        else
          r = mid;
        if (r - l <= 1e-16) break;
      }
      double cross = 0.5 * (l + r);
      if (lo_above) {
        sub_lo = a;
        sub_hi = cross;
      } else {
        sub_lo = cross;
        sub_hi = b;
      }
    }
    prob += w_->cdf(sub_hi) - w_->cdf(sub_lo);
  }
  return prob;
}

double FunctionalModel::angular_joint_survival(double t1, double t2) const {
  if (!(t1 > 0.0)) throw InputError("angular_joint_survival: t1 must be positive");
  if (t1 >= 1.0) return 0.0;
  double p = 0.0;
  if (signs_.pp > 0.0) p += signs_.pp * branch_prob_above(1, 1, t1, t2);
  if (signs_.pm > 0.0) p += signs_.pm * branch_prob_above(1, -1, t1, t2);
  return p;
}

double FunctionalModel::joint_tail_given_r(double a, double x, double r, double delta,
                                           double eta, double v_norm) const {
  if (!(r > 0.0)) throw InputError("joint_tail_given_r: r must be positive");
  if (!(v_norm > 0.0)) throw InputError("joint_tail_given_r: v_norm must be positive");
  double q1 = x * (1.0 + delta / v_norm);
  double q2 = a * x * (1.0 + eta / v_norm);
  if (q1 / r >= 1.0) return 0.0;
  return angular_joint_survival(q1 / r, q2 / r);
}

double FunctionalModel::z_superlevel_prob(double thr) const {
  return branch_prob_above(1, 1, 0.0, thr);
}

double FunctionalModel::marginal_survival_u1(double t) const {
  if (!(t > 0.0)) throw InputError("marginal_survival_u1: t must be positive");
  if (t >= 1.0) return 0.0;
  return (signs_.pm + signs_.pp) * (1.0 - w_->cdf(t));
}

double FunctionalModel::marginal_survival_u2(double t) const {
  if (!(t > 0.0)) throw InputError("marginal_survival_u2: t must be positive");
  double p = 0.0;
  if (signs_.mm > 0.0) p += signs_.mm * branch_prob_above(-1, -1, 0.0, t);
  if (signs_.mp > 0.0) p += signs_.mp * branch_prob_above(-1, 1, 0.0, t);
  if (signs_.pm > 0.0) p += signs_.pm * branch_prob_above(1, -1, 0.0, t);
  if (signs_.pp > 0.0) p += signs_.pp * branch_prob_above(1, 1, 0.0, t);
  return p;
}

std::pair<double, double> FunctionalModel::sample(CounterRng& rng) const {
  double w = w_->quantile(rng.next_unit());
  double u = rng.next_unit();
  int i1, i2;
  if (u < signs_.mm) {
    i1 = -1;
    i2 = -1;
  } else if (u < signs_.mm + signs_.mp) {
    i1 = -1;
    i2 = 1;
  } else if (u < signs_.mm + signs_.mp + signs_.pm) {
    i1 = 1;
    i2 = -1;
  } else {
    i1 = 1;
    i2 = 1;
  }
  return {i1 * w, rho_ * i1 * w + i2 * zstar_(w)};
}

CriticalData FunctionalModel::solve_alpha(double a) const {
  if (!(a > 0.0 && a <= 1.0)) throw InputError("solve_alpha: a must lie in (0,1]");
  if (rho_ > 0.0 && !(a / rho_ > 1.0))
    throw InputError("solve_alpha: no critical direction (need a > rho)");

  const double m_lo = rho_ > 0.0 ? rho_ / a : 1e-9;
  const double m_hi = 1.0 - 1e-12;
  auto gap = [&](double m) { return z(m) - a * m; };

  const int n = 2000;
  int sign_changes = 0;
  int bracket = -1;
  double prev = gap(m_lo);
  for (int i = 1; i <= n; ++i) {
    double m = m_lo + (m_hi - m_lo) * i / n;
    double cur = gap(m);
    if (prev > 0.0 && cur <= 0.0) {
      ++sign_changes;
      if (bracket < 0) bracket = i;
    } else if (prev < 0.0 && cur >= 0.0) {
      ++sign_changes;
    }
    prev = cur;
  }
  if (sign_changes == 0)
    throw InputError("solve_alpha: no critical direction (no sign change in bracket)");
  if (sign_changes > 1)
    throw NumericError("solve_alpha: multiple sign changes; direction not unique");

  double lo = m_lo + (m_hi - m_lo) * (bracket - 1) / n;
  double hi = m_lo + (m_hi - m_lo) * bracket / n;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (gap(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 4e-16 * hi) break;
  }
  const double m = 0.5 * (lo + hi);
  const double alpha = 1.0 / m;

  // Side condition z(x) <= a/alpha on (1/alpha, 1].
  const double cap = a * m;
  for (int i = 1; i <= n; ++i) {
    double x = m + (1.0 - m) * i / n;
    if (z(x) > cap + 4e-12 * (1.0 + std::fabs(cap))) {
      std::ostringstream msg;
      msg << "solve_alpha: side condition violated at x=" << x << " (z=" << z(x)
          << " > a/alpha=" << cap << ")";
      throw InputError(msg.str());
    }
  }

  // Largest symmetric window around m on which z is strictly decreasing,
  // shrunk by a 10% margin.
  const double eps_cap = 0.999 * std::min(m, 1.0 - m);
  auto decreasing_on = [&](double eps) {
    const int k = 64;
    double prev_z = z(m - eps);
    for (int i = 1; i <= k; ++i) {
      double x = m - eps + 2.0 * eps * i / k;
      double cur = z(x);
      if (!(cur < prev_z)) return false;
      prev_z = cur;
    }
    return true;
  };
  double eps = eps_cap;
  if (!decreasing_on(eps)) {
    double good = eps_cap * 1e-3;
    while (good > 1e-8 && !decreasing_on(good)) good *= 0.5;
    if (good <= 1e-8)
      throw NumericError("solve_alpha: z is not locally decreasing at 1/alpha");
    double bad = eps_cap;
    for (int i = 0; i < 60; ++i) {
      double mid = 0.5 * (good + bad);
      if (decreasing_on(mid))
        good = mid;
      else
        bad = mid;
    }
    eps = good;
  }
  eps *= 0.9;

  auto zinv = [&](double y) {
    double l = m - eps, h = m + eps;  // z decreasing: z(l) > y > z(h)
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (l + h);
      if (z(mid) > y)
        l = mid;
      else
        h = mid;
      if (h - l <= 4e-17 * (1.0 + h)) break;
    }
    return 0.5 * (l + h);
  };

  const double y0 = cap;
  double h_room = 0.45 * std::min(z(m - eps) - y0, y0 - z(m + eps));
  if (!(h_room > 0.0)) throw NumericError("solve_alpha: window too small for slope estimate");
  const double h1 = std::min(1e-4, h_room);
  const double h2 = h1 / 10.0, h3 = h1 / 100.0;
  auto csym = [&](double h) { return (zinv(y0 - h) - zinv(y0 + h)) / (2.0 * h); };
  double c1 = csym(h1), c2 = csym(h2), c3 = csym(h3);
  double c = (100.0 * c2 - c1) / 99.0;  // Richardson step on the h^2 error
  if (!(c > 0.0) || std::fabs(c - c3) > std::max(1e-5 * std::fabs(c), 1e-8))
    throw NumericError("solve_alpha: inverse-slope estimates failed to stabilize");

  CriticalData out;
  out.a = a;
  out.alpha = alpha;
  out.c = c;
  out.eps_window = eps;
  // One-sided estimates, Richardson-corrected to kill the O(h) bias.
  auto cl = [&](double h) { return (zinv(y0 - h) - m) / h; };
  auto cr = [&](double h) { return (m - zinv(y0 + h)) / h; };
  out.c_left = 2.0 * cl(0.5 * h3) - cl(h3);
  out.c_right = 2.0 * cr(0.5 * h3) - cr(h3);
  return out;
}

// --------------------------------------------------------------------------
// Factories

FunctionalModel make_elliptical(double rho, SignProbs signs) {
  double orho = std::sqrt(1.0 - rho * rho);
  FunctionalModel::Traits tr;
  tr.tail_gamma1 = 0.5;
  tr.tail_gamma2 = 0.5;
  tr.elliptical_rho = rho;
  return FunctionalModel(
      rho,
      [orho](double x) { return orho * std::sqrt(std::max(0.0, 1.0 - x * x)); },
      std::make_shared<ArcsineW>(), signs, "elliptical", tr);
}

FunctionalModel make_lp(double p, double beta_a, double beta_b, SignProbs signs) {
  FunctionalModel::Traits tr;
  tr.tail_gamma1 = beta_b;
  tr.tail_gamma2 = beta_a;
  tr.lp_p = p;
  return FunctionalModel(
      0.0,
      [p](double x) { return std::pow(std::max(0.0, 1.0 - std::pow(x, p)), 1.0 / p); },
      std::make_shared<PowerBetaW>(p, beta_a, beta_b), signs, "lp", tr);
}

FunctionalModel make_lp_with(double p, std::shared_ptr<const WLaw> w, SignProbs signs,
                             std::string label) {
  FunctionalModel::Traits tr;
  tr.lp_p = p;
  return FunctionalModel(
      0.0,
      [p](double x) { return std::pow(std::max(0.0, 1.0 - std::pow(x, p)), 1.0 / p); },
      std::move(w), signs, std::move(label), tr);
}

double elliptical_alpha(double rho, double a) {
  return std::sqrt(1.0 - 2.0 * a * rho + a * a) / std::sqrt(1.0 - rho * rho);
}

double elliptical_c(double rho, double a) { return (a - rho) / (1.0 - a * rho); }

}  // namespace tailmix
