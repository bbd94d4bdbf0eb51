#include "orthantmc/path_sim.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "orthantmc/errors.hpp"
#include "orthantmc/fft.hpp"
#include "orthantmc/parallel.hpp"

namespace orthantmc {

SimMethod parse_sim_method(const std::string& name) {
  if (name == "auto" || name == "automatic") return SimMethod::automatic;
  if (name == "davies_harte" || name == "davies-harte") return SimMethod::davies_harte;
  if (name == "durbin_levinson" || name == "durbin-levinson")
    return SimMethod::durbin_levinson;
  throw std::invalid_argument("unknown simulation method '" + name + "'");
}

std::string sim_method_name(SimMethod m) {
  switch (m) {
    case SimMethod::automatic: return "auto";
    case SimMethod::davies_harte: return "davies_harte";
    case SimMethod::durbin_levinson: return "durbin_levinson";
  }
  return "?";
}

DaviesHartePlan make_plan(const CovarianceSequence& cov, std::size_t k) {
  if (k < 2) throw std::invalid_argument("make_plan: need k >= 2");
  DaviesHartePlan plan;
  plan.n_points = k;
  plan.spectrum = circulant_spectrum(cov, k);
  plan.sqrt_g.resize(plan.spectrum.g.size());
  for (std::size_t n = 0; n < plan.sqrt_g.size(); ++n)
    plan.sqrt_g[n] = std::sqrt(plan.spectrum.g[n]);
  return plan;
}

DurbinLevinsonPlan make_durbin_levinson_plan(const CovarianceSequence& cov,
                                             std::size_t k) {
  if (k < 1) throw std::invalid_argument("durbin_levinson: need k >= 1");
  const std::vector<double> rho = covariance_lags(cov, k);
  DurbinLevinsonPlan plan;
  plan.n_points = k;
  plan.phi.resize(k);
  plan.innovation_sd.resize(k);
  plan.innovation_sd[0] = 1.0;  // rho_0 = 1
  double v = 1.0;
  for (std::size_t t = 1; t < k; ++t) {
    double num = rho[t];
    for (std::size_t j = 1; j < t; ++j) num -= plan.phi[t - 1][j - 1] * rho[t - j];
    const double a = num / v;
    auto& row = plan.phi[t];
    row.resize(t);
    for (std::size_t j = 1; j < t; ++j)
      row[j - 1] = plan.phi[t - 1][j - 1] - a * plan.phi[t - 1][t - 1 - j];
    row[t - 1] = a;
    v *= (1.0 - a * a);
    if (!(v > 0.0))
      throw NotPositiveDefiniteError(
          "durbin_levinson: innovation variance vanished at step " + std::to_string(t));
    plan.innovation_sd[t] = std::sqrt(v);
  }
  return plan;
}

namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887;

void generate_davies_harte(const DaviesHartePlan& plan, RandomStream rs,
                           std::span<double> out,
                           std::vector<std::complex<double>>& freq) {
  const std::size_t m = plan.embedding_length();
  const std::size_t half = m / 2;
  const auto& sq = plan.sqrt_g;
  freq.resize(m);
  // Z_0 and Z_{M/2} real with variance 2; interior lanes complex with
  // independent unit-variance real and imaginary parts, conjugate-mirrored.
  freq[0] = rs.next_normal() * kSqrt2 * sq[0];
  freq[half] = rs.next_normal() * kSqrt2 * sq[half];
  for (std::size_t n = 1; n < half; ++n) {
    const double re = rs.next_normal();
    const double im = rs.next_normal();
    freq[n] = std::complex<double>(re, im) * sq[n];
    freq[m - n] = std::conj(freq[n]);
  }
  fft_in_place(freq, FftDirection::forward);
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(m));
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (std::fabs(freq[j].imag()) * scale > 1e-9)
      throw std::logic_error("davies_harte: imaginary residue exceeds 1e-9");
    out[j] = freq[j].real() * scale;
  }
}

void generate_durbin_levinson(const DurbinLevinsonPlan& plan, RandomStream rs,
                              std::span<double> out) {
  const std::size_t k = plan.n_points;
  out[0] = plan.innovation_sd[0] * rs.next_normal();
  for (std::size_t t = 1; t < k; ++t) {
    const auto& row = plan.phi[t];
    double mean = 0.0;
    for (std::size_t j = 1; j <= t; ++j) mean += row[j - 1] * out[t - j];
    out[t] = mean + plan.innovation_sd[t] * rs.next_normal();
  }
}

PathBatch run_batch(const PathGenerator& gen, std::size_t n_paths,
                    const RandomStream& base, unsigned workers,
                    const std::string& cov_tag) {
  if (n_paths < 1) throw std::invalid_argument("sampling: need n_paths >= 1");
  const std::size_t k = gen.path_length();
  PathBatch batch;
  batch.n_paths = n_paths;
  batch.k = k;
  batch.seed = base.master_seed();
  batch.stream_base = base.stream_id();
  batch.method_tag = gen.method_tag();
  batch.cov_tag = cov_tag;
  batch.values.resize(n_paths * k);
  parallel_chunks(n_paths, kPathChunk, workers,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    PathGenerator::Scratch scratch;
                    for (std::size_t p = begin; p < end; ++p)
                      gen.generate(base, p, {batch.values.data() + p * k, k}, scratch);
                  });
  for (double v : batch.values)
    if (!std::isfinite(v)) throw std::logic_error("sampling produced a non-finite value");
  return batch;
}

}  // namespace

PathGenerator::PathGenerator(const CovarianceSequence& cov, std::size_t k,
                             SimMethod method) : k_(k) {
  if (k < 1) throw std::invalid_argument("path generator: need k >= 1");
  switch (method) {
    case SimMethod::davies_harte:
      plan_ = make_plan(cov, k);
      method_tag_ = "davies_harte";
      break;
    case SimMethod::durbin_levinson:
      plan_ = make_durbin_levinson_plan(cov, k);
      method_tag_ = "durbin_levinson";
      break;
    case SimMethod::automatic:
      if (k >= 2) {
        try {
          plan_ = make_plan(cov, k);
          method_tag_ = "davies_harte";
          return;
        } catch (const NotNonNegativeDefiniteError&) {
        } catch (const InsufficientLagsError&) {
        }
      }
      plan_ = make_durbin_levinson_plan(cov, k);
      method_tag_ = "durbin_levinson";
      break;
  }
}

void PathGenerator::generate(const RandomStream& base, std::uint64_t path_index,
                             std::span<double> out, Scratch& scratch) const {
  if (out.size() != k_) throw std::invalid_argument("path generator: bad output size");
  RandomStream rs = base.substream(base.stream_id() + path_index);
  if (const auto* dh = std::get_if<DaviesHartePlan>(&plan_)) {
    generate_davies_harte(*dh, rs, out, scratch.freq);
  } else {
    generate_durbin_levinson(std::get<DurbinLevinsonPlan>(plan_), rs, out);
  }
}

PathBatch sample_davies_harte(const DaviesHartePlan& plan, std::size_t n_paths,
                              const RandomStream& base, unsigned workers) {
  if (n_paths < 1) throw std::invalid_argument("sampling: need n_paths >= 1");
  const std::size_t k = plan.n_points;
  PathBatch batch;
  batch.n_paths = n_paths;
  batch.k = k;
  batch.seed = base.master_seed();
  batch.stream_base = base.stream_id();
  batch.method_tag = "davies_harte";
  batch.values.resize(n_paths * k);
  parallel_chunks(n_paths, kPathChunk, workers,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    std::vector<std::complex<double>> freq;
                    for (std::size_t p = begin; p < end; ++p) {
                      RandomStream rs = base.substream(base.stream_id() + p);
                      generate_davies_harte(plan, rs, {batch.values.data() + p * k, k},
                                            freq);
                    }
                  });
  for (double v : batch.values)
    if (!std::isfinite(v)) throw std::logic_error("sampling produced a non-finite value");
  return batch;
}

PathBatch sample_durbin_levinson(const CovarianceSequence& cov, std::size_t k,
                                 std::size_t n_paths, const RandomStream& base,
                                 unsigned workers) {
  PathGenerator gen(cov, k, SimMethod::durbin_levinson);
  return run_batch(gen, n_paths, base, workers, cov.model_tag);
}

PathBatch sample_paths(const CovarianceSequence& cov, std::size_t k,
                       std::size_t n_paths, const RandomStream& base,
                       SimMethod method, unsigned workers) {
  PathGenerator gen(cov, k, method);
  return run_batch(gen, n_paths, base, workers, cov.model_tag);
}

void write_paths_csv(const PathBatch& batch, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write path dump: " + path);
  out.precision(17);
  for (std::size_t p = 0; p < batch.n_paths; ++p) {
    const auto row = batch.path(p);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << row[j];
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing path dump: " + path);
}

}  // namespace orthantmc
