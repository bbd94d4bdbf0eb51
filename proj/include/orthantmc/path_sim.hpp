#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "orthantmc/covariance.hpp"
#include "orthantmc/random.hpp"

namespace orthantmc {

enum class SimMethod { automatic, davies_harte, durbin_levinson };

SimMethod parse_sim_method(const std::string& name);
std::string sim_method_name(SimMethod m);

// Precomputed spectral data for the Davies-Harte sampler. Built once per
// (covariance, k); reusable across any number of sampling calls.
struct DaviesHartePlan {
  CirculantSpectrum spectrum;
  std::vector<double> sqrt_g;
  std::size_t n_points = 0;

  std::size_t embedding_length() const { return spectrum.embedding_length(); }
};

// Throws NotNonNegativeDefiniteError (or InsufficientLagsError for tabulated
// models that are too short) when the embedding cannot be formed.
DaviesHartePlan make_plan(const CovarianceSequence& cov, std::size_t k);

// Partial-autocorrelation recursion coefficients for sequential exact
// sampling: X_{t+1} = sum_j phi[t][j-1] X_{t+1-j} + innovation_sd[t] * eps.
struct DurbinLevinsonPlan {
  std::vector<std::vector<double>> phi;  // phi[t] holds t coefficients, t >= 1
  std::vector<double> innovation_sd;     // index t = 0..k-1
  std::size_t n_points = 0;
};

// Throws NotPositiveDefiniteError if an innovation variance is <= 0.
DurbinLevinsonPlan make_durbin_levinson_plan(const CovarianceSequence& cov,
                                             std::size_t k);

// N_S simulated sample paths of X_1..X_k, row-major.
struct PathBatch {
  std::size_t n_paths = 0;
  std::size_t k = 0;
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::uint64_t stream_base = 0;
  std::string method_tag;
  std::string cov_tag;

  std::span<const double> path(std::size_t p) const {
    return {values.data() + p * k, k};
  }
};

// Per-path generator behind both samplers. Path p consumes only substream
// base.stream_id() + p, so batches are reproducible independent of worker
// count and chunking.
class PathGenerator {
 public:
  PathGenerator(const CovarianceSequence& cov, std::size_t k, SimMethod method);

  const std::string& method_tag() const { return method_tag_; }
  std::size_t path_length() const { return k_; }

  struct Scratch {
    std::vector<std::complex<double>> freq;
  };

  void generate(const RandomStream& base, std::uint64_t path_index,
                std::span<double> out, Scratch& scratch) const;

 private:
  std::variant<DaviesHartePlan, DurbinLevinsonPlan> plan_;
  std::string method_tag_;
  std::size_t k_ = 0;
};

PathBatch sample_davies_harte(const DaviesHartePlan& plan, std::size_t n_paths,
                              const RandomStream& base, unsigned workers = 0);

PathBatch sample_durbin_levinson(const CovarianceSequence& cov, std::size_t k,
                                 std::size_t n_paths, const RandomStream& base,
                                 unsigned workers = 0);

// Dispatch: automatic prefers Davies-Harte and falls back to Durbin-Levinson
// when the embedding is unusable; never fails while the Toeplitz matrix is
// positive definite.
PathBatch sample_paths(const CovarianceSequence& cov, std::size_t k,
                       std::size_t n_paths, const RandomStream& base,
                       SimMethod method = SimMethod::automatic,
                       unsigned workers = 0);

// CSV debug dump, one path per row.
void write_paths_csv(const PathBatch& batch, const std::string& path);

// Generation chunk size; bounds per-chunk memory at large N_S.
inline constexpr std::size_t kPathChunk = 4096;

}  // namespace orthantmc
