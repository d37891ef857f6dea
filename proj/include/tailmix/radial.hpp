#ifndef TAILMIX_RADIAL_HPP
#define TAILMIX_RADIAL_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tailmix {

// A positive radial law with infinite upper endpoint whose survival satisfies
// F(x + t/w(x)) / F(x) -> exp(-t) for the scaling function w.  All laws here
// take w = density/survival (the hazard rate), which makes that limit exact
// for smooth families.  Survival and density are exposed on log scale so the
// deep tail (F ~ 1e-300 and far beyond) stays representable; everything
// downstream assembles tail formulas from these logs.
//
// Instances are immutable after construction and safe for concurrent reads.
class RadialLaw {
public:
  virtual ~RadialLaw() = default;

  const std::string& label() const { return label_; }

  virtual double log_survival(double x) const = 0;  // x >= 0
  virtual double log_density(double x) const = 0;   // x > 0
  virtual double scaling_w(double x) const = 0;     // x > 0
  // Weibull-type index: w is regularly varying with index lambda - 1.
  virtual double weibull_index() const = 0;

  double survival(double x) const;
  double density(double x) const;
  double scaling_v(double x) const;  // v(x) = x * w(x), x > 0

  // Generalized inverse of the distribution function, p in (0,1).
  double quantile(double p) const;
  // b(u) with survival(b(u)) = 1/u, u > 1.
  double quantile_b(double u) const;

  // r with log_survival(r) = log_s; monotone bisection plus Newton polish
  // (d/dr log survival = -w(r)).  Closed forms override this.
  virtual double inverse_log_survival(double log_s) const;

  // Inversion draw of R | R > threshold at uniform level u in (0,1).
  // Works entirely on log scale, so thresholds with underflowing survival
  // are fine.
  double sample_conditional(double threshold, double u) const;

protected:
  explicit RadialLaw(std::string label) : label_(std::move(label)) {}

private:
  std::string label_;
};

// Survival exp(-theta * x^tau) on x >= 0; w(x) = theta*tau*x^(tau-1).
class WeibullTailLaw final : public RadialLaw {
public:
  WeibullTailLaw(double theta, double tau);
  double log_survival(double x) const override;
  double log_density(double x) const override;
  double scaling_w(double x) const override;
  double weibull_index() const override { return tau_; }
  double inverse_log_survival(double log_s) const override;
  double theta() const { return theta_; }
  double tau() const { return tau_; }

private:
  double theta_, tau_;
};

// Norm of a k-dimensional standard Gaussian vector.  Survival is the
// regularized upper incomplete gamma Q(k/2, x^2/2); k = 2 has the closed
// form exp(-x^2/2) with w(x) = x exactly.
class ChiLaw final : public RadialLaw {
public:
  explicit ChiLaw(int k);
  double log_survival(double x) const override;
  double log_density(double x) const override;
  double scaling_w(double x) const override;
  double weibull_index() const override { return 2.0; }
  double inverse_log_survival(double log_s) const override;
  int dof() const { return k_; }

private:
  int k_;
};

class LogNormalLaw final : public RadialLaw {
public:
  LogNormalLaw(double mu, double sigma);
  double log_survival(double x) const override;
  double log_density(double x) const override;
  double scaling_w(double x) const override;
  double weibull_index() const override { return 0.0; }
  double inverse_log_survival(double log_s) const override;

private:
  double mu_, sigma_;
};

struct MdaRow {
  double x, t;
  double ratio1;  // survival(x + t/w(x)) / survival(x), limit exp(-t)
  double dev1;    // |ratio1 - exp(-t)|
  double ratio2;  // w(x + t/w(x)) / w(x), limit 1
  double dev2;    // |ratio2 - 1|
};

// Finite-x diagnostics of the max-domain limit and the self-neglecting
// property of w; deviations must shrink along an increasing x grid.
std::vector<MdaRow> mda_diagnostics(const RadialLaw& law,
                                    std::span<const double> x_grid,
                                    std::span<const double> t_grid);

// Repeated conditional sampling helper: caches a grid seed for the inverse
// so each draw needs only a couple of Newton steps.  Read-only after
// construction; usable concurrently.
class ConditionalSampler {
public:
  ConditionalSampler(const RadialLaw& law, double threshold);
  double operator()(double u) const;  // u in (0,1)

private:
  const RadialLaw& law_;
  double threshold_, log_sf_threshold_;
  std::vector<double> grid_s_;  // s values (log survival offsets)
  std::vector<double> grid_r_;
};

}  // namespace tailmix

#endif
