#ifndef TAILMIX_ORACLE_HPP
#define TAILMIX_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tailmix/angular.hpp"
#include "tailmix/asymptotics.hpp"
#include "tailmix/functional.hpp"
#include "tailmix/radial.hpp"

namespace tailmix {

struct OracleConfig {
  double rel_tol = 1e-8;
  long n_samples = 1000000;
  std::uint64_t seed = 20260810;
  int chunks = 64;
  int threads = 1;
  void validate() const;
};

// Resolved joint-tail integration problem: p = int_{r_lo}^inf Q(r) dF(r)
// with Q(r) = P(U1 > q1/r, U2 > q2/r) and Q == 0 below r_lo.
struct JointSpec {
  double q1 = 0.0, q2 = 0.0;
  double r_lo = 0.0;
  std::function<double(double)> angular;  // r -> Q(r)
  std::vector<double> r_breakpoints{};    // kinks / branch activation radii
};

// Thresholds q1 = x(1+delta/v(x)), q2 = a x(1+eta/v(x)).
JointSpec make_joint_spec(const RadialLaw& radial, const AngularModel& model, double a,
                          double delta, double eta, double x);
// Functional model: thresholds scaled by v(alpha x); the binding radius uses
// the side condition (both branches empty up to alpha * min(q1, q2/a)).
JointSpec make_joint_spec(const RadialLaw& radial, const FunctionalModel& model,
                          const CriticalData& crit, double delta, double eta, double x);
// Arbitrary absolute thresholds for a functional model.
JointSpec make_joint_spec_thresholds(const FunctionalModel& model, const CriticalData& crit,
                                     double q1, double q2);
// One-dimensional marginal: p = int Q(r) dF with Q(r) = m(q/r).
JointSpec make_marginal_spec(const std::function<double(double)>& marginal_survival,
                             double u_sup, double q);

// Exact mixture integral by adaptive panels in the normalized variable
// s = v(r_lo)(r/r_lo - 1); the measure is the radial density evaluated
// against log survival so thresholds deep past double underflow work.
// Truncates when the remaining survival mass falls below rel_tol * value.
TailEstimate quadrature_joint_tail(const RadialLaw& radial, const JointSpec& spec,
                                   const OracleConfig& cfg);

// Rao-Blackwellized estimator survival(r_lo) * mean Q(r_i) with
// r_i ~ R | R > r_lo drawn by inversion.  Deterministic in
// (seed, n_samples, chunks) regardless of thread count.
TailEstimate mc_joint_tail(const RadialLaw& radial, const JointSpec& spec,
                           const OracleConfig& cfg);

// Full-indicator estimator drawing the angular pair itself; validates the
// exact joint tail against the sampling law.
TailEstimate mc_joint_tail_indicator(
    const RadialLaw& radial, const JointSpec& spec,
    const std::function<std::pair<double, double>(CounterRng&)>& draw_pair,
    const OracleConfig& cfg);

struct ConvergenceRow {
  double x;
  TailEstimate approx;
  TailEstimate oracle;
  double ratio;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  bool trend_ok;  // |ratio-1| nonincreasing over the last three grid points
};

ConvergenceTable convergence_table(const std::function<TailEstimate(double)>& approx,
                                   const std::function<TailEstimate(double)>& oracle,
                                   std::span<const double> x_grid);

// Uniform access to a scale-mixture pair for marginal quantiles and joint
// tails at arbitrary thresholds (dependence measures need both model kinds).
struct MixtureView {
  std::function<double(double)> marginal1, marginal2;  // P(U1>t), P(U2>t)
  std::function<JointSpec(double, double)> joint;      // (q1,q2) -> spec
  double u1_sup = 1.0, u2_sup = 1.0;
};

MixtureView make_view(const AngularModel& model);
MixtureView make_view(const FunctionalModel& model, const CriticalData& crit);

// Marginal survival of R*U at threshold q, and its inverse: the quantile
// b(u) with P(R U > b(u)) = 1/u.
TailEstimate marginal_tail_quadrature(const RadialLaw& radial,
                                      const std::function<double(double)>& marginal_survival,
                                      double u_sup, double q, const OracleConfig& cfg);
double marginal_quantile(const RadialLaw& radial,
                         const std::function<double(double)>& marginal_survival,
                         double u_sup, double u, const OracleConfig& cfg);

}  // namespace tailmix

#endif
