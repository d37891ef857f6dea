#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "tailmix/asymptotics.hpp"
#include "tailmix/config.hpp"
#include "tailmix/dependence.hpp"
#include "tailmix/errors.hpp"
#include "tailmix/oracle.hpp"
#include "tailmix/verify.hpp"

namespace {

using namespace tailmix;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;
  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw InputError("cannot open output file '" + path + "'");
    os = &file;
  }
  std::ostream& stream() { return *os; }
};

void write_preamble(std::ostream& os, std::uint64_t hash, std::uint64_t seed) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "# config_hash=%016" PRIx64 " seed=%" PRIu64, hash, seed);
  os << buf << "\n";
}

std::string components_field(const TailEstimate& e) {
  std::string out;
  const double ln10 = std::log(10.0);
  for (const auto& [name, lv] : e.log_components) {
    if (!out.empty()) out += ';';
    out += name + "=" + num(lv / ln10);
  }
  return out;
}

int cmd_approx(const ExperimentConfig& cfg, Output& out) {
  write_preamble(out.stream(), cfg.config_hash, cfg.oracle.seed);
  out.stream() << "x,method,value_log10,components\n";
  std::vector<double> grid = cfg.x_grid.empty() ? std::vector<double>{4, 6, 8, 10} : cfg.x_grid;
  for (double x : grid) {
    std::vector<TailEstimate> rows;
    if (cfg.angular) {
      rows.push_back(
          angular_tail_approx(*cfg.radial, *cfg.angular, cfg.a, cfg.delta, cfg.eta, x));
    } else {
      const FunctionalModel& m = *cfg.functional;
      if (cfg.delta > 0.0 || cfg.eta > 0.0)
        rows.push_back(functional_excess_approx(*cfg.radial, m, cfg.a, cfg.delta, cfg.eta, x));
      else
        rows.push_back(functional_tail_approx(*cfg.radial, m, cfg.a, x));
      if (m.traits().elliptical_rho && cfg.delta == 0.0 && cfg.eta == 0.0)
        rows.push_back(elliptical_closed_form(*m.traits().elliptical_rho, cfg.a, *cfg.radial, x));
      if (m.traits().lp_p)
        rows.push_back(lp_closed_form(*cfg.radial, m, cfg.a, cfg.delta, cfg.eta, x));
    }
    for (const TailEstimate& e : rows) {
      out.stream() << num(x) << ',' << method_name(e.method) << ',' << num(e.log10_value())
                   << ',' << components_field(e) << "\n";
    }
  }
  return 0;
}

int cmd_compare(const ExperimentConfig& cfg, Output& out, int threads) {
  std::vector<double> grid = cfg.x_grid.empty() ? std::vector<double>{4, 6, 8, 10} : cfg.x_grid;
  OracleConfig ocfg = cfg.oracle;
  ocfg.threads = threads;

  std::function<TailEstimate(double)> approx, oracle;
  if (cfg.angular) {
    approx = [&](double x) {
      return angular_tail_approx(*cfg.radial, *cfg.angular, cfg.a, cfg.delta, cfg.eta, x);
    };
    oracle = [&](double x) {
      return quadrature_joint_tail(
          *cfg.radial, make_joint_spec(*cfg.radial, *cfg.angular, cfg.a, cfg.delta, cfg.eta, x),
          ocfg);
    };
  } else {
    CriticalData crit = cfg.functional->solve_alpha(cfg.a);
    approx = [&, crit](double x) {
      if (cfg.delta > 0.0 || cfg.eta > 0.0)
        return functional_excess_approx(*cfg.radial, *cfg.functional, crit, cfg.delta, cfg.eta,
                                        x);
      return functional_tail_approx(*cfg.radial, *cfg.functional, crit, x);
    };
    oracle = [&, crit](double x) {
      return quadrature_joint_tail(
          *cfg.radial, make_joint_spec(*cfg.radial, *cfg.functional, crit, cfg.delta, cfg.eta, x),
          ocfg);
    };
  }

  ConvergenceTable table = convergence_table(approx, oracle, grid);
  write_preamble(out.stream(), cfg.config_hash, cfg.oracle.seed);
  out.stream() << "x,approx_log10,oracle_log10,ratio,trend_ok\n";
  for (const auto& row : table.rows) {
    out.stream() << num(row.x) << ',' << num(row.approx.log10_value()) << ','
                 << num(row.oracle.log10_value()) << ',' << num(row.ratio) << ','
                 << (table.trend_ok ? 1 : 0) << "\n";
  }
  return table.trend_ok ? 0 : 4;
}

int cmd_excess(const ExperimentConfig& cfg, Output& out, int threads) {
  if (!cfg.functional)
    throw InputError("excess: requires a functional model");
  ExcessConfig ecfg;
  ecfg.n_proposals = cfg.excess_proposals;
  ecfg.min_accepted = cfg.excess_min_accepted;
  ecfg.seed = cfg.oracle.seed;
  ecfg.chunks = cfg.oracle.chunks;
  ecfg.threads = threads;
  std::vector<double> grid = cfg.x_grid.empty() ? std::vector<double>{cfg.excess_x} : cfg.x_grid;
  write_preamble(out.stream(), cfg.config_hash, cfg.oracle.seed);
  out.stream() << "x,n_accepted,ks_x,ks_y,corr,rate_x,rate_y\n";
  for (double x : grid) {
    ExcessEmpirical e = excess_empirical(*cfg.radial, *cfg.functional, cfg.a, x, ecfg);
    out.stream() << num(x) << ',' << e.n_accepted << ',' << num(e.ks_x) << ',' << num(e.ks_y)
                 << ',' << num(e.corr) << ',' << num(e.rate_x) << ',' << num(e.rate_y) << "\n";
  }
  return 0;
}

int cmd_eta(const ExperimentConfig& cfg, Output& out, int threads) {
  if (!cfg.functional) throw InputError("eta: requires a functional model");
  OracleConfig ocfg = cfg.oracle;
  ocfg.threads = threads;
  std::vector<double> grid = cfg.eta_u_grid.empty()
                                 ? std::vector<double>{1e2, 1e3, 1e4, 1e5, 1e6}
                                 : cfg.eta_u_grid;
  ResidualIndex closed = residual_index_functional(*cfg.functional, *cfg.radial, 1.0);
  ResidualIndex emp = empirical_eta(*cfg.radial, *cfg.functional, grid, ocfg);
  write_preamble(out.stream(), cfg.config_hash, cfg.oracle.seed);
  out.stream() << "eta_closed,eta_empirical,abs_diff,slope,points_used,xi_gap\n";
  out.stream() << num(closed.eta) << ',' << num(emp.eta) << ','
               << num(std::fabs(closed.eta - emp.eta)) << ',' << num(emp.slope) << ','
               << emp.points_used << ',' << num(emp.xi_gap) << "\n";
  return 0;
}

int cmd_verify(Output& out, int threads) {
  auto results = run_verification(threads);
  write_preamble(out.stream(), 0, 0);
  out.stream() << "check,pass,detail\n";
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    std::string detail = r.detail;
    for (char& ch : detail)
      if (ch == ',') ch = ';';
    out.stream() << r.name << ',' << (r.pass ? 1 : 0) << ',' << detail << "\n";
  }
  return all ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail asymptotics and oracles for bivariate scale mixtures"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 2;
  app.add_option("--config", config_path, "experiment config (JSON)");
  app.add_option("--out", out_path, "output CSV path (default stdout)");
  app.add_option("--seed", seed, "override the oracle seed")->each([&](std::string) {
    seed_given = true;
  });
  app.add_option("--threads", threads, "worker threads for MC chunks");

  auto* approx = app.add_subcommand("approx", "tail approximation values");
  auto* compare = app.add_subcommand("compare", "approximation vs oracle convergence table");
  auto* excess = app.add_subcommand("excess", "empirical conditional-excess diagnostics");
  auto* eta = app.add_subcommand("eta", "residual dependence index, closed vs empirical");
  auto* verify = app.add_subcommand("verify", "run the module invariant battery");

  CLI11_PARSE(app, argc, argv);

  try {
    Output out;
    out.open(out_path);
    if (verify->parsed()) return cmd_verify(out, threads);

    if (config_path.empty()) throw InputError("--config is required for this command");
    ExperimentConfig cfg = load_config(config_path);
    if (seed_given) cfg.oracle.seed = seed;

    if (approx->parsed()) return cmd_approx(cfg, out);
    if (compare->parsed()) return cmd_compare(cfg, out, threads);
    if (excess->parsed()) return cmd_excess(cfg, out, threads);
    if (eta->parsed()) return cmd_eta(cfg, out, threads);
    return 0;
  } catch (const InputError& e) {
    std::cerr << "config/input error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
