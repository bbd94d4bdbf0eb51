#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "orthantmc/parallel.hpp"
#include "orthantmc/runner.hpp"

namespace {

using orthantmc::RunConfig;

struct CliState {
  RunConfig cfg;
  std::string model = "arfima";
  double d = 0.0;
  bool d_set = false;
  std::string method = "auto";
  std::size_t k = 0;
  std::string k_range;
};

void add_model_options(CLI::App* sub, CliState& st) {
  sub->add_option("--model", st.model, "Covariance model: arfima | cov-file")
      ->check(CLI::IsMember({"arfima", "cov-file"}));
  sub->add_option_function<double>(
      "--d",
      [&st](double v) {
        st.d = v;
        st.d_set = true;
      },
      "ARFIMA fractional-difference parameter, |d| < 0.5");
  sub->add_option("--cov-file", st.cfg.cov_file,
                  "Tabulated autocovariance file (one lag per line, rho_0 = 1)");
  sub->add_option("--boundary", st.cfg.boundary_spec,
                  "Boundary: const:<c> | lin:<a>,<b> (S_t = a + b*t) | file:<path>");
}

void add_k_options(CLI::App* sub, CliState& st) {
  auto* single = sub->add_option("--k", st.k, "Dimension / horizon");
  auto* range = sub->add_option("--k-range", st.k_range, "Inclusive range lo:hi");
  single->excludes(range);
  range->excludes(single);
}

void add_common_options(CLI::App* sub, CliState& st) {
  sub->add_option("--seed", st.cfg.seed, "Master RNG seed");
  sub->add_option("--workers", st.cfg.workers,
                  "Worker threads (default: hardware, or ORTHANTMC_WORKERS)");
  sub->add_option("--output", st.cfg.output_path, "Write rows as CSV to this path");
}

void finish_config(CliState& st, RunConfig::Command command) {
  st.cfg.command = command;
  if (st.model == "cov-file" && st.cfg.cov_file.empty())
    throw std::invalid_argument("--model cov-file requires --cov-file");
  if (st.cfg.cov_file.empty()) {
    if (!st.d_set && command != RunConfig::Command::table)
      throw std::invalid_argument("ARFIMA model requires --d");
    st.cfg.arfima_d = st.d;
  }
  if (command == RunConfig::Command::table) return;
  if (!st.k_range.empty()) {
    const auto colon = st.k_range.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("--k-range expects lo:hi");
    st.cfg.k_lo = std::stoul(st.k_range.substr(0, colon));
    st.cfg.k_hi = std::stoul(st.k_range.substr(colon + 1));
  } else {
    st.cfg.k_lo = st.cfg.k_hi = st.k;
  }
  st.cfg.sim_method = orthantmc::parse_sim_method(st.method);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "orthantmc: multivariate normal orthant probabilities by first-passage-time "
      "Monte Carlo, with Genz, GHK and Slepian-bound cross checks"};
  app.require_subcommand(1);

  CliState st;

  auto* fpt = app.add_subcommand("fpt", "First-passage-time estimator (survival curve)");
  add_model_options(fpt, st);
  add_k_options(fpt, st);
  add_common_options(fpt, st);
  fpt->add_option("--paths", st.cfg.n_paths, "Number of simulated sample paths N_S");
  fpt->add_option("--method", st.method, "auto | davies_harte | durbin_levinson");
  fpt->add_flag("--per-k", st.cfg.per_k_replication,
                "Fresh batch for every k instead of one shared batch");
  fpt->add_option("--quad-nodes", st.cfg.quad_nodes,
                  "Gauss-Hermite nodes for the containment bound");
  fpt->add_option("--dump-paths", st.cfg.dump_paths, "Debug CSV dump of the path matrix");

  auto* genz = app.add_subcommand("genz", "Transformed-integral Monte Carlo estimator");
  add_model_options(genz, st);
  add_k_options(genz, st);
  add_common_options(genz, st);
  genz->add_option("--tolerance", st.cfg.tolerance, "Target 99% absolute error");
  genz->add_option("--max-evals", st.cfg.max_evals,
                   "Integrand evaluation cap (default k*1000)");

  auto* ghk = app.add_subcommand("ghk", "GHK sequential importance sampler");
  add_model_options(ghk, st);
  add_k_options(ghk, st);
  add_common_options(ghk, st);
  ghk->add_option("--draws", st.cfg.n_paths, "Number of replications N");

  auto* bounds = app.add_subcommand("bounds", "Slepian upper bounds on P_k");
  add_model_options(bounds, st);
  add_k_options(bounds, st);
  add_common_options(bounds, st);
  bounds->add_option("--quad-nodes", st.cfg.quad_nodes, "Gauss-Hermite nodes");

  auto* compare = app.add_subcommand("compare", "Run fpt, genz and ghk on one problem");
  add_model_options(compare, st);
  add_k_options(compare, st);
  add_common_options(compare, st);
  compare->add_option("--paths", st.cfg.n_paths, "FPT paths / GHK draws");
  compare->add_option("--tolerance", st.cfg.tolerance, "Genz target error");
  compare->add_option("--max-evals", st.cfg.max_evals, "Genz evaluation cap");
  compare->add_option("--method", st.method, "Path sampler selection");

  auto* table = app.add_subcommand(
      "table", "Built-in comparison workloads across k=20..40 (all three methods)");
  table->add_option("--which", st.cfg.table_which,
                    "1: constant boundary S=1, d=0.2; 2: linear 2-0.01t, d=0.3")
      ->required();
  add_common_options(table, st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig::Command command;
  if (fpt->parsed()) command = RunConfig::Command::fpt;
  else if (genz->parsed()) command = RunConfig::Command::genz;
  else if (ghk->parsed()) command = RunConfig::Command::ghk;
  else if (bounds->parsed()) command = RunConfig::Command::bounds;
  else if (compare->parsed()) command = RunConfig::Command::compare;
  else command = RunConfig::Command::table;

  try {
    finish_config(st, command);
    orthantmc::validate(st.cfg);
    const std::vector<orthantmc::ResultRow> rows = orthantmc::run(st.cfg);
    std::cout << orthantmc::format_table(rows);
    if (command == RunConfig::Command::compare) {
      const double sigma = orthantmc::compare_max_sigma(rows);
      std::printf("max pairwise discrepancy: %.2f combined sigma (%s)\n", sigma,
                  sigma <= 3.0 ? "consistent" : "INCONSISTENT");
    }
    if (!st.cfg.output_path.empty()) {
      orthantmc::emit_csv(rows, st.cfg.output_path);
      std::cout << "wrote " << rows.size() << " rows to " << st.cfg.output_path << "\n";
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
