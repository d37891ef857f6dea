#ifndef TAILMIX_VERIFY_HPP
#define TAILMIX_VERIFY_HPP

#include <memory>
#include <string>
#include <vector>

#include "tailmix/angular.hpp"
#include "tailmix/functional.hpp"
#include "tailmix/radial.hpp"

namespace tailmix {

// A shipped (radial, dependence model, level) configuration; exactly one of
// angular / functional is set.  These drive the cross-validation and
// verification batteries.
struct ShippedConfig {
  std::string name;
  std::shared_ptr<RadialLaw> radial;
  std::shared_ptr<AngularModel> angular;
  std::shared_ptr<FunctionalModel> functional;
  double a = 1.0;
};

const std::vector<ShippedConfig>& shipped_configurations();

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

// Runs the module invariant battery; every check catches its own failures.
std::vector<CheckResult> run_verification(int threads);

}  // namespace tailmix

#endif
