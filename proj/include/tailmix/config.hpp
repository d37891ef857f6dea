#ifndef TAILMIX_CONFIG_HPP
#define TAILMIX_CONFIG_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tailmix/angular.hpp"
#include "tailmix/functional.hpp"
#include "tailmix/oracle.hpp"
#include "tailmix/radial.hpp"

namespace tailmix {

// Parsed experiment description (JSON file; schema in the README and the
// configs/ examples).  Exactly one of `angular` / `functional` is set.
struct ExperimentConfig {
  std::shared_ptr<RadialLaw> radial;
  std::shared_ptr<AngularModel> angular;
  std::shared_ptr<FunctionalModel> functional;
  double a = 1.0;
  double delta = 0.0;
  double eta = 0.0;
  std::vector<double> x_grid;
  OracleConfig oracle;
  std::vector<double> eta_u_grid;
  std::vector<double> l_u_grid;
  double excess_x = 8.0;
  long excess_proposals = 2000000;
  long excess_min_accepted = 1000;
  std::uint64_t config_hash = 0;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

std::shared_ptr<RadialLaw> make_radial_from_json(const std::string& json_text);

}  // namespace tailmix

#endif
