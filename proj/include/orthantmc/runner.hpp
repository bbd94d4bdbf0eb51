#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orthantmc/boundary.hpp"
#include "orthantmc/covariance.hpp"
#include "orthantmc/path_sim.hpp"

namespace orthantmc {

// One front-end request: which estimator, which problem, which budget.
struct RunConfig {
  enum class Command { fpt, genz, ghk, bounds, compare, table };

  Command command = Command::fpt;
  std::optional<double> arfima_d;
  std::string cov_file;
  std::string boundary_spec = "const:1";
  std::size_t k_lo = 0;
  std::size_t k_hi = 0;
  std::size_t n_paths = 100000;  // FPT paths / GHK draws
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0 = hardware default (ORTHANTMC_WORKERS overrides)
  double tolerance = 1e-4;
  std::uint64_t max_evals = 0;  // 0 = k * 1000
  SimMethod sim_method = SimMethod::automatic;
  bool per_k_replication = false;  // fresh batch per k instead of one shared batch
  int table_which = 0;             // 1 | 2
  std::size_t quad_nodes = 64;
  std::string output_path;    // CSV destination; empty = stdout table only
  std::string dump_paths;     // optional path-matrix CSV (fpt only)
};

// Throws std::invalid_argument when any parameter is out of range.
void validate(const RunConfig& config);

// One emitted result line; mirrors the CSV columns.
struct ResultRow {
  std::string method;
  std::size_t k = 0;
  double estimate = 0.0;
  double stderr_or_err99 = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t n_samples = 0;
  double seconds = 0.0;
  std::string flags;
};

std::vector<ResultRow> run(const RunConfig& config);

// Header `method,k,estimate,stderr,ci_low,ci_high,n_samples,seconds,flags`,
// reals at 10 significant digits. Throws on empty rows or unwritable path.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::string format_csv(const std::vector<ResultRow>& rows);

std::string format_table(const std::vector<ResultRow>& rows);

// Covariance/boundary construction shared by the CLI and the bindings.
CovarianceSequence make_model(const RunConfig& config, std::size_t max_lag);
std::vector<double> boundary_thresholds(const Boundary& boundary, std::size_t k);

// Largest pairwise discrepancy between the estimates in units of combined
// standard error; used by the compare command.
double compare_max_sigma(const std::vector<ResultRow>& rows);

// Substream bases keeping the estimators' draw spaces disjoint.
inline constexpr std::uint64_t kFptStreamBase = 0;
inline constexpr std::uint64_t kGhkStreamBase = std::uint64_t(1) << 41;
inline constexpr std::uint64_t kGenzStreamBase = std::uint64_t(1) << 42;
// Per-k runs are offset by k * 2^24 within each base; no overlap up to
// k = 2^16 at 2^24 samples per run.
inline constexpr std::uint64_t kPerKStride = std::uint64_t(1) << 24;

}  // namespace orthantmc
