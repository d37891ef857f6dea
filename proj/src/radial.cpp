#include "tailmix/radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tailmix/errors.hpp"
#include "tailmix/special.hpp"

namespace tailmix {

namespace {
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

void require_nonneg(double x, const char* who) {
  if (!(x >= 0.0)) {
    std::ostringstream m;
    m << who << ": x must be nonnegative, got " << x;
    throw InputError(m.str());
  }
}
void require_pos(double x, const char* who) {
  if (!(x > 0.0)) {
    std::ostringstream m;
    m << who << ": x must be positive, got " << x;
    throw InputError(m.str());
  }
}
}  // namespace

double RadialLaw::survival(double x) const { return std::exp(log_survival(x)); }
double RadialLaw::density(double x) const { return std::exp(log_density(x)); }

double RadialLaw::scaling_v(double x) const {
  require_pos(x, "scaling_v");
  return x * scaling_w(x);
}

double RadialLaw::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw InputError("quantile: p must lie in (0,1)");
  return inverse_log_survival(std::log1p(-p));
}

double RadialLaw::quantile_b(double u) const {
  if (!(u > 1.0)) throw InputError("quantile_b: u must exceed 1");
  return inverse_log_survival(-std::log(u));
}

double RadialLaw::inverse_log_survival(double log_s) const {
  if (!(log_s <= 0.0)) throw InputError("inverse_log_survival: level must be <= 0");
  if (log_s == 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (log_survival(hi) > log_s) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericError("inverse_log_survival: bracket blew up");
  }
  for (int i = 0; i < 120; ++i) {
    double mid = 0.5 * (lo + hi);
    if (log_survival(mid) > log_s)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-13 * hi) break;
  }
  double r = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    double g = log_survival(r) - log_s;
    double step = g / scaling_w(r);  // derivative of log survival is -w
    double next = r + step;
    if (next > 0.0 && std::isfinite(next)) r = next;
  }
  return r;
}

double RadialLaw::sample_conditional(double threshold, double u) const {
  require_nonneg(threshold, "sample_conditional");
  if (!(u > 0.0 && u < 1.0)) throw InputError("sample_conditional: u must lie in (0,1)");
  double target = std::log(u) + log_survival(threshold);
  double r = inverse_log_survival(target);
  return std::max(r, threshold);
}

// ---------------------------------------------------------------------------

WeibullTailLaw::WeibullTailLaw(double theta, double tau)
    : RadialLaw("weibull_tail"), theta_(theta), tau_(tau) {
  if (!(theta > 0.0) || !(tau > 0.0))
    throw InputError("WeibullTailLaw: theta and tau must be positive");
}

double WeibullTailLaw::log_survival(double x) const {
  require_nonneg(x, "survival");
  return -theta_ * std::pow(x, tau_);
}

double WeibullTailLaw::log_density(double x) const {
  require_pos(x, "density");
  return std::log(theta_ * tau_) + (tau_ - 1.0) * std::log(x) - theta_ * std::pow(x, tau_);
}

double WeibullTailLaw::scaling_w(double x) const {
  require_pos(x, "scaling_w");
  return theta_ * tau_ * std::pow(x, tau_ - 1.0);
}

double WeibullTailLaw::inverse_log_survival(double log_s) const {
  if (!(log_s <= 0.0)) throw InputError("inverse_log_survival: level must be <= 0");
  return std::pow(-log_s / theta_, 1.0 / tau_);
}

// ---------------------------------------------------------------------------

ChiLaw::ChiLaw(int k) : RadialLaw("chi"), k_(k) {
  if (k < 1) throw InputError("ChiLaw: dof must be >= 1");
}

double ChiLaw::log_survival(double x) const {
  require_nonneg(x, "survival");
  if (k_ == 2) return -0.5 * x * x;
  if (x == 0.0) return 0.0;
  return special::log_gamma_q(0.5 * k_, 0.5 * x * x);
}

double ChiLaw::log_density(double x) const {
  require_pos(x, "density");
  return (1.0 - 0.5 * k_) * std::log(2.0) + (k_ - 1.0) * std::log(x) -
         0.5 * x * x - std::lgamma(0.5 * k_);
}

double ChiLaw::scaling_w(double x) const {
  require_pos(x, "scaling_w");
  if (k_ == 2) return x;
  return std::exp(log_density(x) - log_survival(x));
}

double ChiLaw::inverse_log_survival(double log_s) const {
  if (!(log_s <= 0.0)) throw InputError("inverse_log_survival: level must be <= 0");
  if (k_ == 2) return std::sqrt(-2.0 * log_s);
  return RadialLaw::inverse_log_survival(log_s);
}

// ---------------------------------------------------------------------------

LogNormalLaw::LogNormalLaw(double mu, double sigma)
    : RadialLaw("lognormal"), mu_(mu), sigma_(sigma) {
  if (!(sigma > 0.0)) throw InputError("LogNormalLaw: sigma must be positive");
}

double LogNormalLaw::log_survival(double x) const {
  require_nonneg(x, "survival");
  if (x == 0.0) return 0.0;
  return special::log_normal_sf((std::log(x) - mu_) / sigma_);
}

double LogNormalLaw::log_density(double x) const {
  require_pos(x, "density");
  double t = (std::log(x) - mu_) / sigma_;
  return -std::log(x) - std::log(sigma_) - kLogSqrt2Pi - 0.5 * t * t;
}

double LogNormalLaw::scaling_w(double x) const {
  require_pos(x, "scaling_w");
  return std::exp(log_density(x) - log_survival(x));
}

double LogNormalLaw::inverse_log_survival(double log_s) const {
  if (!(log_s <= 0.0)) throw InputError("inverse_log_survival: level must be <= 0");
  if (log_s == 0.0) return 0.0;
  double t = special::normal_sf_inv_log(log_s);
  return std::exp(mu_ + sigma_ * t);
}

// ---------------------------------------------------------------------------

std::vector<MdaRow> mda_diagnostics(const RadialLaw& law,
                                    std::span<const double> x_grid,
                                    std::span<const double> t_grid) {
  if (x_grid.empty() || t_grid.empty())
    throw InputError("mda_diagnostics: grids must be nonempty");
  if (!std::is_sorted(x_grid.begin(), x_grid.end()))
    throw InputError("mda_diagnostics: x grid must be increasing");
  std::vector<MdaRow> rows;
  rows.reserve(x_grid.size() * t_grid.size());
  for (double x : x_grid) {
    double w = law.scaling_w(x);
    for (double t : t_grid) {
      double shifted = x + t / w;
      double r1 = shifted <= 0.0 ? std::exp(-law.log_survival(x))
                                 : std::exp(law.log_survival(shifted) - law.log_survival(x));
      double r2 = shifted <= 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                 : law.scaling_w(shifted) / w;
      rows.push_back({x, t, r1, std::fabs(r1 - std::exp(-t)), r2, std::fabs(r2 - 1.0)});
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------

ConditionalSampler::ConditionalSampler(const RadialLaw& law, double threshold)
    : law_(law), threshold_(threshold), log_sf_threshold_(law.log_survival(threshold)) {
  // Seed grid over survival offsets s = -(log sf(r) - log sf(threshold)),
  // s in [0, 80]; draws deeper than exp(-80) fall back to full inversion.
  const int n = 512;
  grid_s_.resize(n + 1);
  grid_r_.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    double s = 80.0 * i / n;
    grid_s_[i] = s;
    grid_r_[i] = law.inverse_log_survival(log_sf_threshold_ - s);
  }
}

double ConditionalSampler::operator()(double u) const {
  double s = -std::log(u);
  if (s >= grid_s_.back())
    return std::max(threshold_, law_.inverse_log_survival(log_sf_threshold_ - s));
  auto it = std::upper_bound(grid_s_.begin(), grid_s_.end(), s);
  std::size_t hi = static_cast<std::size_t>(it - grid_s_.begin());
  std::size_t lo = hi - 1;
  double f = (s - grid_s_[lo]) / (grid_s_[hi] - grid_s_[lo]);
  double r = grid_r_[lo] + f * (grid_r_[hi] - grid_r_[lo]);
  double target = log_sf_threshold_ - s;
  for (int i = 0; i < 3; ++i) {
    double g = law_.log_survival(r) - target;
    r += g / law_.scaling_w(r);
  }
  return std::max(r, threshold_);
}

}  // namespace tailmix
