#pragma once

#include <cstdint>
#include <span>

#include "orthantmc/matrix.hpp"
#include "orthantmc/random.hpp"

namespace orthantmc {

struct GenzResult {
  double estimate = 0.0;
  double error_99 = 0.0;   // estimated 99% absolute error
  std::uint64_t n_evals = 0;
  bool hit_eval_cap = false;
  double elapsed_seconds = 0.0;
};

// Monte Carlo on the unit-hypercube transform of the orthant integral:
// weight = prod e_i with e_1 = Phi(S_1/c_11) and
// e_i = Phi((S_i - sum_{j<i} c_ij Phi^{-1}(w_j e_j)) / c_ii).
// Draws are processed in batches of 256 points per substream; stops when the
// estimated 99% error (2.576 * sd of batch means / sqrt(#batches)) drops to
// the tolerance or the evaluation cap is reached.
GenzResult genz_estimate(std::span<const double> thresholds,
                         const CholeskyFactor& chol, double tolerance,
                         std::uint64_t max_evals, const RandomStream& base);

struct GhkResult {
  double estimate = 0.0;
  double std_err = 0.0;
  std::uint64_t n_draws = 0;
  double elapsed_seconds = 0.0;
};

// Sequential importance sampler: each replication draws y_i from N(0,1)
// truncated to (-inf, u_i) by inverse CDF and accumulates weight
// prod Phi(u_i) with u_i = (S_i - sum_{j<i} c_ij y_j)/c_ii. Replications
// underflowing to zero weight are kept as zeros. Replication r consumes
// substream base + r, so results are worker-count independent.
GhkResult ghk_estimate(std::span<const double> thresholds,
                       const CholeskyFactor& chol, std::uint64_t n_draws,
                       const RandomStream& base, unsigned workers = 0);

}  // namespace orthantmc
