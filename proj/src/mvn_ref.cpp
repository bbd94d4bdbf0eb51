#include "orthantmc/mvn_ref.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "orthantmc/normal.hpp"
#include "orthantmc/parallel.hpp"

namespace orthantmc {

namespace {

constexpr std::size_t kGenzBatch = 256;
constexpr std::size_t kGenzMinBatches = 4;
constexpr double kZ99Genz = 2.576;
constexpr std::size_t kGhkChunk = 4096;

// Compensated accumulator; keeps identical-weight sums exact to ~1 ulp.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

void check_inputs(std::span<const double> thresholds, const CholeskyFactor& chol) {
  if (chol.dim() == 0) throw std::invalid_argument("estimator: k must be >= 1");
  if (thresholds.size() != chol.dim())
    throw std::invalid_argument("estimator: thresholds/Cholesky dimension mismatch");
}

}  // namespace

GenzResult genz_estimate(std::span<const double> thresholds,
                         const CholeskyFactor& chol, double tolerance,
                         std::uint64_t max_evals, const RandomStream& base) {
  check_inputs(thresholds, chol);
  if (!(tolerance > 0.0)) throw std::invalid_argument("genz: tolerance must be positive");
  if (max_evals < 1) throw std::invalid_argument("genz: max_evals must be >= 1");

  const std::size_t k = chol.dim();
  const Matrix& c = chol.c;
  const auto t0 = std::chrono::steady_clock::now();

  const double e1 = normal_cdf(thresholds[0] / c(0, 0));
  GenzResult result;
  if (k == 1) {
    // No integration variables remain.
    result.estimate = e1;
    result.error_99 = 0.0;
    result.n_evals = 1;
    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
  }

  std::vector<double> y(k - 1, 0.0);
  KahanSum total;
  std::vector<double> batch_means;
  std::uint64_t n_evals = 0;
  double error = std::numeric_limits<double>::infinity();

  for (std::uint64_t b = 0; n_evals < max_evals; ++b) {
    RandomStream stream = base.substream(base.stream_id() + b);
    const std::size_t points =
        static_cast<std::size_t>(std::min<std::uint64_t>(kGenzBatch, max_evals - n_evals));
    KahanSum batch;
    for (std::size_t pt = 0; pt < points; ++pt) {
      double weight = e1;
      double e = e1;
      for (std::size_t i = 1; i < k && weight > 0.0; ++i) {
        const double u = stream.next_uniform();
        const double arg = u * e;
        if (arg <= 0.0) {
          weight = 0.0;
          break;
        }
        y[i - 1] = normal_quantile(arg);
        double shift = 0.0;
        for (std::size_t j = 0; j < i; ++j) shift += c(i, j) * y[j];
        e = normal_cdf((thresholds[i] - shift) / c(i, i));
        weight *= e;
      }
      batch.add(weight);
    }
    total.add(batch.value());
    n_evals += points;
    if (points == kGenzBatch) batch_means.push_back(batch.value() / points);

    const std::size_t nb = batch_means.size();
    if (nb >= 2) {
      double mean = 0.0;
      for (double m : batch_means) mean += m;
      mean /= nb;
      double var = 0.0;
      for (double m : batch_means) var += (m - mean) * (m - mean);
      var /= (nb - 1);
      error = kZ99Genz * std::sqrt(var / nb);
      if (nb >= kGenzMinBatches && error <= tolerance) break;
    }
  }

  result.estimate = total.value() / static_cast<double>(n_evals);
  result.error_99 = std::isfinite(error) ? error : 0.0;
  result.n_evals = n_evals;
  result.hit_eval_cap = n_evals >= max_evals && error > tolerance;
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

GhkResult ghk_estimate(std::span<const double> thresholds,
                       const CholeskyFactor& chol, std::uint64_t n_draws,
                       const RandomStream& base, unsigned workers) {
  check_inputs(thresholds, chol);
  if (n_draws < 1) throw std::invalid_argument("ghk: n_draws must be >= 1");

  const std::size_t k = chol.dim();
  const Matrix& c = chol.c;
  const auto t0 = std::chrono::steady_clock::now();

  const std::size_t n = static_cast<std::size_t>(n_draws);
  const std::size_t n_chunks = chunk_count(n, kGhkChunk);
  // Per-chunk running moments merged in chunk order: worker-count independent
  // and exactly zero variance for identical weights.
  std::vector<double> chunk_n(n_chunks, 0.0);
  std::vector<double> chunk_mean(n_chunks, 0.0);
  std::vector<double> chunk_m2(n_chunks, 0.0);

  parallel_chunks(n, kGhkChunk, workers,
                  [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                    std::vector<double> y(k, 0.0);
                    double cnt = 0.0, mean = 0.0, m2 = 0.0;
                    for (std::size_t r = begin; r < end; ++r) {
                      RandomStream stream = base.substream(base.stream_id() + r);
                      double weight = 1.0;
                      for (std::size_t i = 0; i < k; ++i) {
                        double shift = 0.0;
                        for (std::size_t j = 0; j < i; ++j) shift += c(i, j) * y[j];
                        const double u_i = (thresholds[i] - shift) / c(i, i);
                        const double p = normal_cdf(u_i);
                        weight *= p;
                        if (weight <= 0.0) {
                          weight = 0.0;  // truncation underflow, kept as zero
                          break;
                        }
                        if (i + 1 < k) {
                          const double v = stream.next_uniform();
                          const double arg = v * p;
                          if (arg <= 0.0) {
                            weight = 0.0;
                            break;
                          }
                          y[i] = normal_quantile(arg);
                        }
                      }
                      cnt += 1.0;
                      const double delta = weight - mean;
                      mean += delta / cnt;
                      m2 += delta * (weight - mean);
                    }
                    chunk_n[chunk] = cnt;
                    chunk_mean[chunk] = mean;
                    chunk_m2[chunk] = m2;
                  });

  double cnt = 0.0, mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < n_chunks; ++i) {
    const double delta = chunk_mean[i] - mean;
    const double merged = cnt + chunk_n[i];
    m2 += chunk_m2[i] + delta * delta * cnt * chunk_n[i] / merged;
    mean += delta * chunk_n[i] / merged;
    cnt = merged;
  }

  GhkResult result;
  result.n_draws = n_draws;
  const double nn = static_cast<double>(n_draws);
  result.estimate = mean;
  if (n_draws > 1) {
    const double var = std::max(0.0, m2 / (nn - 1.0));
    result.std_err = std::sqrt(var / nn);
  }
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace orthantmc
