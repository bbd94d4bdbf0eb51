#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orthantmc/matrix.hpp"

namespace orthantmc {

// Autocovariances rho_0..rho_L of a zero-mean unit-variance stationary
// series; rho_0 = 1. ARFIMA models carry their parameter so the sequence can
// be extended to any lag; tabulated models cannot grow beyond their table.
struct CovarianceSequence {
  std::vector<double> rho;
  std::string model_tag;
  std::optional<double> arfima_d;

  std::size_t max_lag() const { return rho.empty() ? 0 : rho.size() - 1; }
  bool extendable() const { return arfima_d.has_value(); }
};

// ARFIMA(0,d,0) correlations rho_k = rho_{k-1} * (d+k-1)/(k-d), rho_0 = 1.
// Throws std::invalid_argument unless |d| < 0.5.
CovarianceSequence arfima_covariance(double d, std::size_t max_lag);

// Wraps a user-supplied lag sequence; requires values[0] = 1 within 1e-12.
// Positive definiteness is not checked here.
CovarianceSequence load_tabulated_covariance(const std::vector<double>& values);

// Text format: one real per line, line i holds rho_{i-1}; '#' starts a
// comment line.
CovarianceSequence load_covariance_file(const std::string& path);

// Lags 0..count-1, extending ARFIMA models as needed. Throws
// InsufficientLagsError when a tabulated model is too short.
std::vector<double> covariance_lags(const CovarianceSequence& cov, std::size_t count);

// Eigenvalues of the circulant embedding of the covariance, suitable for
// spectral path synthesis when all are non-negative.
struct CirculantSpectrum {
  std::vector<double> g;
  double min_eigenvalue = 0.0;
  std::size_t embedding_length() const { return g.size(); }
};

// Builds the even extension {rho_0,...,rho_{n-1},rho_{n-2},...,rho_1}
// (base length 2(n-1)), padded to the next power of two with true model
// autocovariances, and returns its forward DFT. Throws
// NotNonNegativeDefiniteError if any eigenvalue is below -1e-9; values in
// [-1e-9, 0) are clamped to zero.
CirculantSpectrum circulant_spectrum(const CovarianceSequence& cov,
                                     std::size_t n_points);

// Sigma_ij = rho_{|i-j|}; requires lags 0..k-1.
Matrix toeplitz_matrix(const CovarianceSequence& cov, std::size_t k);

}  // namespace orthantmc
