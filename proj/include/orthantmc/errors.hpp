#pragma once

#include <stdexcept>
#include <string>

namespace orthantmc {

// A matrix that must be positive definite is not: Cholesky pivot or
// Durbin-Levinson innovation variance dropped to zero or below.
class NotPositiveDefiniteError : public std::runtime_error {
 public:
  explicit NotPositiveDefiniteError(const std::string& what)
      : std::runtime_error(what) {}
};

// The circulant embedding spectrum has an eigenvalue below -1e-9, so the
// covariance cannot be sampled spectrally. Callers may fall back to the
// Durbin-Levinson sampler.
class NotNonNegativeDefiniteError : public std::runtime_error {
 public:
  explicit NotNonNegativeDefiniteError(const std::string& what)
      : std::runtime_error(what) {}
};

// A covariance sequence cannot supply the requested lags (tabulated model
// queried beyond its table).
class InsufficientLagsError : public std::invalid_argument {
 public:
  explicit InsufficientLagsError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace orthantmc
