#include "orthantmc/runner.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "orthantmc/bounds.hpp"
#include "orthantmc/fpt.hpp"
#include "orthantmc/mvn_ref.hpp"
#include "orthantmc/parallel.hpp"

namespace orthantmc {

namespace {

constexpr double kZ99 = 2.5758293035489004;

// Built-in comparison workloads: per-k sample-path counts for the constant
// boundary run (S=1, d=0.2) and the linear boundary run (S_t=2-0.01t, d=0.3),
// k = 20..40.
constexpr std::size_t kTableKLo = 20;
constexpr std::size_t kTableKHi = 40;
constexpr std::array<std::size_t, 21> kTable1Paths = {
    2000, 2100, 2100, 2200, 2200, 2400, 2650, 2650, 2650, 2750, 2800,
    3900, 3950, 4000, 4000, 4000, 4000, 6300, 6300, 6400, 6500};
constexpr std::array<std::size_t, 21> kTable2Paths = {
    3100, 3500, 3700, 4200, 4500, 4500, 4650, 4700, 4700, 4700, 4850,
    4950, 5100, 5200, 5250, 5500, 5800, 5900, 6100, 6400, 6500};

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

ResultRow fpt_row(const SurvivalCurve& curve, std::size_t k, bool fallback,
                  bool bound_violated) {
  ResultRow row;
  row.method = "fpt";
  row.k = k;
  row.estimate = curve.p_hat[k];
  row.stderr_or_err99 = curve.std_err[k];
  row.ci_low = curve.ci_low[k];
  row.ci_high = curve.ci_high[k];
  row.n_samples = curve.n_paths;
  row.seconds = curve.elapsed_seconds;
  std::vector<std::string> flags;
  if (fallback) flags.push_back("fallback-used");
  if (bound_violated) flags.push_back("bound-violated");
  row.flags = join_flags(flags);
  return row;
}

ResultRow genz_row(const GenzResult& res, std::size_t k) {
  ResultRow row;
  row.method = "genz";
  row.k = k;
  row.estimate = res.estimate;
  row.stderr_or_err99 = res.error_99;
  row.ci_low = std::max(0.0, res.estimate - res.error_99);
  row.ci_high = std::min(1.0, res.estimate + res.error_99);
  row.n_samples = res.n_evals;
  row.seconds = res.elapsed_seconds;
  if (res.hit_eval_cap) row.flags = "eval-cap-hit";
  return row;
}

ResultRow ghk_row(const GhkResult& res, std::size_t k) {
  ResultRow row;
  row.method = "ghk";
  row.k = k;
  row.estimate = res.estimate;
  row.stderr_or_err99 = res.std_err;
  row.ci_low = std::max(0.0, res.estimate - kZ99 * res.std_err);
  row.ci_high = std::min(1.0, res.estimate + kZ99 * res.std_err);
  row.n_samples = res.n_draws;
  row.seconds = res.elapsed_seconds;
  return row;
}

ResultRow bounds_row(const SlepianBound& bound, double seconds) {
  ResultRow row;
  row.method = "bounds";
  row.k = bound.k;
  row.estimate = bound.value;
  row.stderr_or_err99 = 0.0;
  row.ci_low = bound.value;
  row.ci_high = bound.value;
  row.n_samples = 0;
  row.seconds = seconds;
  std::vector<std::string> flags;
  flags.push_back(bound.case_tag == SlepianBound::Case::exchangeable ? "exchangeable"
                                                                     : "independent");
  if (!bound.stable) flags.push_back("quad-unstable");
  row.flags = join_flags(flags);
  return row;
}

std::uint64_t genz_cap(const RunConfig& config, std::size_t k) {
  return config.max_evals > 0 ? config.max_evals
                              : static_cast<std::uint64_t>(k) * 1000;
}

std::vector<ResultRow> run_fpt(const RunConfig& config, const CovarianceSequence& cov,
                               const Boundary& boundary) {
  std::vector<ResultRow> rows;
  const std::vector<std::size_t> ks = [&] {
    std::vector<std::size_t> v;
    for (std::size_t k = config.k_lo; k <= config.k_hi; ++k) v.push_back(k);
    return v;
  }();

  auto curve_rows = [&](const SurvivalCurve& curve, std::span<const std::size_t> wanted) {
    const std::vector<double> bound = slepian_bound_curve(cov, boundary, curve.k_max,
                                                          config.quad_nodes);
    const BoundCheckReport report = fairness_bound_check(curve, bound);
    const bool fallback = config.sim_method == SimMethod::automatic &&
                          curve.method_tag == "durbin_levinson";
    for (std::size_t k : wanted) {
      bool violated = false;
      for (std::size_t vk : report.violations) violated |= (vk == k);
      rows.push_back(fpt_row(curve, k, fallback, violated));
    }
  };

  if (config.per_k_replication) {
    for (std::size_t k : ks) {
      const OrthantProblem problem{cov, boundary, k};
      const RandomStream base(config.seed, kFptStreamBase + k * kPerKStride);
      const SurvivalCurve curve =
          estimate_orthant_fpt(problem, config.n_paths, base, config.sim_method,
                               config.workers);
      const std::array<std::size_t, 1> one = {k};
      curve_rows(curve, one);
    }
  } else {
    const OrthantProblem problem{cov, boundary, config.k_hi};
    const RandomStream base(config.seed, kFptStreamBase);
    const SurvivalCurve curve = estimate_orthant_fpt(problem, config.n_paths, base,
                                                     config.sim_method, config.workers);
    curve_rows(curve, ks);
    if (!config.dump_paths.empty()) {
      const PathBatch batch = sample_paths(cov, config.k_hi, config.n_paths, base,
                                           config.sim_method, config.workers);
      write_paths_csv(batch, config.dump_paths);
    }
  }
  return rows;
}

std::vector<ResultRow> run_table(const RunConfig& config) {
  const bool first = config.table_which == 1;
  const auto& paths = first ? kTable1Paths : kTable2Paths;
  RunConfig base = config;
  base.arfima_d = first ? 0.2 : 0.3;
  base.cov_file.clear();
  base.boundary_spec = first ? "const:1" : "lin:2,-0.01";
  const Boundary boundary = Boundary::parse(base.boundary_spec);
  const CovarianceSequence cov = make_model(base, kTableKHi);

  std::vector<ResultRow> rows;
  for (std::size_t k = kTableKLo; k <= kTableKHi; ++k) {
    const std::size_t n_s = paths[k - kTableKLo];
    const std::vector<double> s = boundary_thresholds(boundary, k);
    const CholeskyFactor chol = cholesky(toeplitz_matrix(cov, k));

    const GenzResult genz =
        genz_estimate(s, chol, 1e-4, static_cast<std::uint64_t>(k) * 1000,
                      RandomStream(config.seed, kGenzStreamBase + k * kPerKStride));
    rows.push_back(genz_row(genz, k));

    const GhkResult ghk =
        ghk_estimate(s, chol, n_s,
                     RandomStream(config.seed, kGhkStreamBase + k * kPerKStride),
                     config.workers);
    rows.push_back(ghk_row(ghk, k));

    const OrthantProblem problem{cov, boundary, k};
    const SurvivalCurve curve = estimate_orthant_fpt(
        problem, n_s, RandomStream(config.seed, kFptStreamBase + k * kPerKStride),
        config.sim_method, config.workers);
    rows.push_back(fpt_row(curve, k, false, false));
  }
  return rows;
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.command == RunConfig::Command::table) {
    if (config.table_which != 1 && config.table_which != 2)
      throw std::invalid_argument("config: table --which must be 1 or 2");
    return;  // remaining parameters are fixed by the workload
  }
  if (config.cov_file.empty()) {
    if (!config.arfima_d.has_value())
      throw std::invalid_argument("config: need either --d (ARFIMA) or --cov-file");
    if (!(std::fabs(*config.arfima_d) < 0.5))
      throw std::invalid_argument("config: ARFIMA d must satisfy |d| < 0.5");
  }
  if (config.k_lo < 1 || config.k_hi < config.k_lo)
    throw std::invalid_argument("config: need 1 <= k (and k-range low <= high)");
  if (config.n_paths < 1) throw std::invalid_argument("config: need n >= 1");
  if (!(config.tolerance > 0.0))
    throw std::invalid_argument("config: tolerance must be positive");
  if (config.quad_nodes < 16)
    throw std::invalid_argument("config: quad-nodes must be >= 16");
  if (resolve_workers(config.workers) < 1)
    throw std::invalid_argument("config: workers must be >= 1");
  if (config.command == RunConfig::Command::compare && config.k_lo != config.k_hi)
    throw std::invalid_argument("config: compare takes a single k");
  Boundary::parse(config.boundary_spec);  // surface syntax errors early
}

CovarianceSequence make_model(const RunConfig& config, std::size_t max_lag) {
  if (!config.cov_file.empty()) return load_covariance_file(config.cov_file);
  return arfima_covariance(*config.arfima_d, std::max<std::size_t>(max_lag, 1));
}

std::vector<double> boundary_thresholds(const Boundary& boundary, std::size_t k) {
  std::vector<double> s(k);
  for (std::size_t t = 1; t <= k; ++t) s[t - 1] = boundary.at(t);
  return s;
}

double compare_max_sigma(const std::vector<ResultRow>& rows) {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      auto sigma = [](const ResultRow& r) {
        return r.method == "genz" ? r.stderr_or_err99 / 2.576 : r.stderr_or_err99;
      };
      const double s2 = sigma(rows[i]) * sigma(rows[i]) + sigma(rows[j]) * sigma(rows[j]);
      const double diff = std::fabs(rows[i].estimate - rows[j].estimate);
      if (s2 > 0.0) worst = std::max(worst, diff / std::sqrt(s2));
    }
  }
  return worst;
}

std::vector<ResultRow> run(const RunConfig& config) {
  validate(config);
  if (config.command == RunConfig::Command::table) return run_table(config);

  const CovarianceSequence cov = make_model(config, config.k_hi);
  const Boundary boundary = Boundary::parse(config.boundary_spec);

  std::vector<ResultRow> rows;
  switch (config.command) {
    case RunConfig::Command::fpt:
      return run_fpt(config, cov, boundary);
    case RunConfig::Command::genz:
      for (std::size_t k = config.k_lo; k <= config.k_hi; ++k) {
        const auto s = boundary_thresholds(boundary, k);
        const CholeskyFactor chol = cholesky(toeplitz_matrix(cov, k));
        const GenzResult res =
            genz_estimate(s, chol, config.tolerance, genz_cap(config, k),
                          RandomStream(config.seed, kGenzStreamBase + k * kPerKStride));
        rows.push_back(genz_row(res, k));
      }
      return rows;
    case RunConfig::Command::ghk:
      for (std::size_t k = config.k_lo; k <= config.k_hi; ++k) {
        const auto s = boundary_thresholds(boundary, k);
        const CholeskyFactor chol = cholesky(toeplitz_matrix(cov, k));
        const GhkResult res =
            ghk_estimate(s, chol, config.n_paths,
                         RandomStream(config.seed, kGhkStreamBase + k * kPerKStride),
                         config.workers);
        rows.push_back(ghk_row(res, k));
      }
      return rows;
    case RunConfig::Command::bounds:
      for (std::size_t k = config.k_lo; k <= config.k_hi; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        const SlepianBound bound = slepian_bound(cov, boundary, k, config.quad_nodes);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back(bounds_row(bound, secs));
      }
      return rows;
    case RunConfig::Command::compare: {
      RunConfig sub = config;
      sub.command = RunConfig::Command::fpt;
      auto fpt_rows = run_fpt(sub, cov, boundary);
      rows.insert(rows.end(), fpt_rows.begin(), fpt_rows.end());
      const std::size_t k = config.k_lo;
      const auto s = boundary_thresholds(boundary, k);
      const CholeskyFactor chol = cholesky(toeplitz_matrix(cov, k));
      rows.push_back(genz_row(
          genz_estimate(s, chol, config.tolerance, genz_cap(config, k),
                        RandomStream(config.seed, kGenzStreamBase + k * kPerKStride)),
          k));
      rows.push_back(ghk_row(
          ghk_estimate(s, chol, config.n_paths,
                       RandomStream(config.seed, kGhkStreamBase + k * kPerKStride),
                       config.workers),
          k));
      return rows;
    }
    case RunConfig::Command::table:
      break;  // handled above
  }
  throw std::logic_error("run: unhandled command");
}

namespace {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string format_csv(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  std::ostringstream os;
  os << "method,k,estimate,stderr,ci_low,ci_high,n_samples,seconds,flags\n";
  for (const auto& r : rows) {
    os << r.method << ',' << r.k << ',' << format_real(r.estimate) << ','
       << format_real(r.stderr_or_err99) << ',' << format_real(r.ci_low) << ','
       << format_real(r.ci_high) << ',' << r.n_samples << ','
       << format_real(r.seconds) << ',' << r.flags << '\n';
  }
  return os.str();
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  const std::string body = format_csv(rows);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << body;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::string format_table(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-8s %4s %12s %12s %12s %12s %10s %9s  %s\n", "method",
                "k", "estimate", "stderr", "ci_low", "ci_high", "n", "seconds", "flags");
  os << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-8s %4zu %12.6g %12.4g %12.6g %12.6g %10llu %9.3f  %s\n",
                  r.method.c_str(), r.k, r.estimate, r.stderr_or_err99, r.ci_low,
                  r.ci_high, static_cast<unsigned long long>(r.n_samples), r.seconds,
                  r.flags.c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace orthantmc
