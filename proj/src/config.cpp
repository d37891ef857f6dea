#include "tailmix/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tailmix/errors.hpp"

namespace tailmix {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<double>();
}

double req_num(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) {
    std::ostringstream m;
    m << where << ": missing required field '" << key << "'";
    throw InputError(m.str());
  }
  return j.at(key).get<double>();
}

std::shared_ptr<RadialLaw> make_radial(const json& j) {
  std::string family = j.at("family").get<std::string>();
  if (family == "chi") return std::make_shared<ChiLaw>(static_cast<int>(req_num(j, "k", "radial")));
  if (family == "weibull_tail")
    return std::make_shared<WeibullTailLaw>(req_num(j, "theta", "radial"),
                                            req_num(j, "tau", "radial"));
  if (family == "lognormal")
    return std::make_shared<LogNormalLaw>(get_num(j, "mu", 0.0), get_num(j, "sigma", 1.0));
  throw InputError("radial: unknown family '" + family + "'");
}

std::shared_ptr<AngularModel> make_angular(const json& j) {
  std::string model = j.at("model").get<std::string>();
  if (model == "min_dominated")
    return std::make_shared<MinDominated>(req_num(j, "gamma1", "angular"));
  if (model == "linear_combo")
    return std::make_shared<LinearCombo>(req_num(j, "lambda1", "angular"),
                                         req_num(j, "lambda2", "angular"),
                                         req_num(j, "gamma1", "angular"),
                                         req_num(j, "gamma2", "angular"));
  if (model == "fgm")
    return std::make_shared<Fgm>(req_num(j, "k", "angular"), req_num(j, "gamma1", "angular"),
                                 req_num(j, "gamma2", "angular"));
  throw InputError("angular: unknown model '" + model + "'");
}

SignProbs signs_from(const json& j) {
  if (!j.contains("signs")) return SignProbs::symmetric();
  auto v = j.at("signs").get<std::vector<double>>();
  if (v.size() != 4) throw InputError("signs: need 4 probabilities [p--, p-+, p+-, p++]");
  return SignProbs{v[0], v[1], v[2], v[3]};
}

std::shared_ptr<FunctionalModel> make_functional(const json& j) {
  std::string model = j.at("model").get<std::string>();
  SignProbs signs = signs_from(j);
  if (model == "elliptical")
    return std::make_shared<FunctionalModel>(make_elliptical(req_num(j, "rho", "functional"), signs));
  if (model == "lp") {
    double p = req_num(j, "p", "functional");
    double ba = 1.0, bb = 1.0;
    if (j.contains("w")) {
      ba = get_num(j.at("w"), "beta_alpha", 1.0);
      bb = get_num(j.at("w"), "beta_beta", 1.0);
    }
    return std::make_shared<FunctionalModel>(make_lp(p, ba, bb, signs));
  }
  throw InputError("functional: unknown model '" + model + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: JSON parse error: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    if (!j.contains("radial")) throw InputError("config: missing 'radial' table");
    cfg.radial = make_radial(j.at("radial"));
    bool has_ang = j.contains("angular"), has_fun = j.contains("functional");
    if (has_ang == has_fun)
      throw InputError("config: exactly one of 'angular' / 'functional' must be given");
    if (has_ang) cfg.angular = make_angular(j.at("angular"));
    if (has_fun) cfg.functional = make_functional(j.at("functional"));

    cfg.a = get_num(j, "a", 1.0);
    if (!(cfg.a > 0.0 && cfg.a <= 1.0)) throw InputError("config: a must lie in (0,1]");
    cfg.delta = get_num(j, "delta", 0.0);
    cfg.eta = get_num(j, "eta", 0.0);
    if (cfg.delta < 0.0 || cfg.eta < 0.0) throw InputError("config: delta, eta must be >= 0");

    if (j.contains("x_grid")) cfg.x_grid = j.at("x_grid").get<std::vector<double>>();
    if (j.contains("eta_u_grid")) cfg.eta_u_grid = j.at("eta_u_grid").get<std::vector<double>>();
    if (j.contains("l_u_grid")) cfg.l_u_grid = j.at("l_u_grid").get<std::vector<double>>();

    if (j.contains("oracle")) {
      const json& o = j.at("oracle");
      cfg.oracle.rel_tol = get_num(o, "rel_tol", cfg.oracle.rel_tol);
      cfg.oracle.n_samples = static_cast<long>(get_num(o, "n_samples", cfg.oracle.n_samples));
      cfg.oracle.seed = static_cast<std::uint64_t>(get_num(o, "seed", cfg.oracle.seed));
      cfg.oracle.chunks = static_cast<int>(get_num(o, "chunks", cfg.oracle.chunks));
      cfg.oracle.validate();
    }
    if (j.contains("excess")) {
      const json& e = j.at("excess");
      cfg.excess_x = get_num(e, "x", cfg.excess_x);
      cfg.excess_proposals = static_cast<long>(get_num(e, "n_proposals", cfg.excess_proposals));
      cfg.excess_min_accepted =
          static_cast<long>(get_num(e, "min_accepted", cfg.excess_min_accepted));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  cfg.config_hash = fnv1a(j.dump());
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::shared_ptr<RadialLaw> make_radial_from_json(const std::string& json_text) {
  return make_radial(json::parse(json_text));
}

}  // namespace tailmix
