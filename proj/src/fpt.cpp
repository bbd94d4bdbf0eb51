#include "orthantmc/fpt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "orthantmc/parallel.hpp"

namespace orthantmc {

std::optional<std::size_t> first_crossing(std::span<const double> path,
                                          const Boundary& boundary) {
  for (std::size_t j = 0; j < path.size(); ++j)
    if (path[j] >= boundary.at(j + 1)) return j + 1;
  return std::nullopt;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
  if (n == 0) throw std::invalid_argument("wilson_interval: n must be positive");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  WilsonInterval w;
  w.low = std::max(0.0, center - half);
  w.high = std::min(1.0, center + half);
  return w;
}

SurvivalCurve estimate_orthant_fpt(const OrthantProblem& problem,
                                   std::size_t n_paths, const RandomStream& base,
                                   SimMethod method, unsigned workers) {
  if (n_paths < 1) throw std::invalid_argument("estimate_orthant_fpt: need n_paths >= 1");
  const std::size_t k_max = problem.k_max;
  if (k_max < 1) throw std::invalid_argument("estimate_orthant_fpt: need k_max >= 1");

  const PathGenerator gen(problem.cov, k_max, method);

  // Thresholds evaluated once; t = 0 is the start point and never a crossing.
  std::vector<double> s(k_max + 1, 0.0);
  for (std::size_t t = 1; t <= k_max; ++t) s[t] = problem.boundary.at(t);

  const auto t0 = std::chrono::steady_clock::now();

  const std::size_t n_chunks = chunk_count(n_paths, kPathChunk);
  // Per-chunk tallies; slot k_max+1 counts censored paths. Integer merges are
  // order-independent, so any worker count yields the same curve.
  std::vector<std::vector<std::uint64_t>> tallies(
      n_chunks, std::vector<std::uint64_t>(k_max + 2, 0));

  parallel_chunks(n_paths, kPathChunk, workers,
                  [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                    PathGenerator::Scratch scratch;
                    std::vector<double> x(k_max);
                    auto& tally = tallies[chunk];
                    for (std::size_t p = begin; p < end; ++p) {
                      gen.generate(base, p, x, scratch);
                      std::size_t t = 0;
                      while (t < k_max && x[t] < s[t + 1]) ++t;
                      if (t < k_max)
                        ++tally[t + 1];
                      else
                        ++tally[k_max + 1];
                    }
                  });

  SurvivalCurve curve;
  curve.k_max = k_max;
  curve.n_paths = n_paths;
  curve.crossings.assign(k_max + 1, 0);
  for (const auto& tally : tallies) {
    for (std::size_t t = 1; t <= k_max; ++t) curve.crossings[t] += tally[t];
    curve.censored += tally[k_max + 1];
  }

  curve.p_hat.assign(k_max + 1, 1.0);
  curve.std_err.assign(k_max + 1, 0.0);
  curve.ci_low.assign(k_max + 1, 1.0);
  curve.ci_high.assign(k_max + 1, 1.0);
  curve.survivors.assign(k_max + 1, n_paths);

  const double z99 = 2.5758293035489004;  // Phi^{-1}(0.995)
  const double nn = static_cast<double>(n_paths);
  std::uint64_t cum = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    cum += curve.crossings[k];
    const std::uint64_t alive = n_paths - cum;
    curve.survivors[k] = alive;
    const double p = static_cast<double>(alive) / nn;
    curve.p_hat[k] = p;
    curve.std_err[k] = std::sqrt(p * (1.0 - p) / nn);
    const WilsonInterval ci = wilson_interval(alive, n_paths, z99);
    curve.ci_low[k] = ci.low;
    curve.ci_high[k] = ci.high;
  }

  curve.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  curve.method_tag = gen.method_tag();
  curve.cov_tag = problem.cov.model_tag;
  curve.boundary_tag = problem.boundary.describe();
  curve.seed = base.master_seed();
  return curve;
}

BoundCheckReport fairness_bound_check(const SurvivalCurve& curve,
                                      std::span<const double> bounds) {
  if (bounds.size() < curve.k_max + 1)
    throw std::invalid_argument("fairness_bound_check: need a bound for every k");
  BoundCheckReport report;
  for (std::size_t k = 1; k <= curve.k_max; ++k) {
    const double lower = curve.p_hat[k] - 3.0 * curve.std_err[k];
    if (lower > bounds[k]) {
      report.violations.push_back(k);
      report.worst_excess = std::max(report.worst_excess, lower - bounds[k]);
    }
  }
  return report;
}

}  // namespace orthantmc
