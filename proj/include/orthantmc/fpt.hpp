#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orthantmc/boundary.hpp"
#include "orthantmc/covariance.hpp"
#include "orthantmc/path_sim.hpp"
#include "orthantmc/random.hpp"

namespace orthantmc {

// The argument of P_k(S, Sigma): a covariance model, an absorbing boundary
// and the horizon k_max.
struct OrthantProblem {
  CovarianceSequence cov;
  Boundary boundary;
  std::size_t k_max = 0;
};

// Smallest t in 1..k with path[t-1] >= S_t, or nullopt when the path never
// crosses (censored).
std::optional<std::size_t> first_crossing(std::span<const double> path,
                                          const Boundary& boundary);

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

// Wilson score interval for a binomial proportion at normal quantile z.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n, double z);

// Survival estimates p_hat[k] = 1 - P(T <= k) for every k up to the horizon,
// from one batch of N_S paths. p_hat[0] = 1 by convention.
struct SurvivalCurve {
  std::size_t k_max = 0;
  std::uint64_t n_paths = 0;
  std::vector<double> p_hat;              // index 0..k_max
  std::vector<double> std_err;            // binomial, index 0..k_max
  std::vector<double> ci_low;             // Wilson 99%
  std::vector<double> ci_high;
  std::vector<std::uint64_t> crossings;   // crossings[t] = #{T = t}, index 0 unused
  std::uint64_t censored = 0;             // paths with no crossing by k_max
  std::vector<std::uint64_t> survivors;   // survivors[k] = #{T > k}
  double elapsed_seconds = 0.0;
  std::string method_tag;
  std::string cov_tag;
  std::string boundary_tag;
  std::uint64_t seed = 0;
};

// Simulates N_S paths of length k_max (one batch serves every k <= k_max;
// the events {T <= k} are nested) and tallies first crossings. Deterministic
// for fixed (seed, stream id, n_paths) at any worker count.
SurvivalCurve estimate_orthant_fpt(const OrthantProblem& problem,
                                   std::size_t n_paths, const RandomStream& base,
                                   SimMethod method = SimMethod::automatic,
                                   unsigned workers = 0);

// Slepian containment diagnostic: flags every k where
// p_hat[k] - 3*std_err[k] > bound[k], a statistically significant violation
// of an upper bound, which indicates a bug.
struct BoundCheckReport {
  std::vector<std::size_t> violations;
  double worst_excess = 0.0;
  bool ok() const { return violations.empty(); }
};

// bounds[k] indexed 1..k_max (index 0 ignored).
BoundCheckReport fairness_bound_check(const SurvivalCurve& curve,
                                      std::span<const double> bounds);

}  // namespace orthantmc
