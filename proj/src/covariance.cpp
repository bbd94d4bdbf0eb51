#include "orthantmc/covariance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "orthantmc/errors.hpp"
#include "orthantmc/fft.hpp"

namespace orthantmc {

namespace {

std::string arfima_tag(double d) {
  std::ostringstream os;
  os << "arfima{d=" << d << "}";
  return os.str();
}

}  // namespace

CovarianceSequence arfima_covariance(double d, std::size_t max_lag) {
  if (!(std::fabs(d) < 0.5))
    throw std::invalid_argument("arfima_covariance: require |d| < 0.5");
  CovarianceSequence cov;
  cov.model_tag = arfima_tag(d);
  cov.arfima_d = d;
  cov.rho.resize(max_lag + 1);
  cov.rho[0] = 1.0;
  for (std::size_t k = 1; k <= max_lag; ++k)
    cov.rho[k] = cov.rho[k - 1] * (d + k - 1.0) / (k - d);
  return cov;
}

CovarianceSequence load_tabulated_covariance(const std::vector<double>& values) {
  if (values.empty())
    throw std::invalid_argument("tabulated covariance: empty sequence");
  if (std::fabs(values[0] - 1.0) > 1e-12)
    throw std::invalid_argument("tabulated covariance: rho_0 must be 1");
  for (double v : values) {
    if (!std::isfinite(v))
      throw std::invalid_argument("tabulated covariance: non-finite lag value");
    if (std::fabs(v) > 1.0 + 1e-12)
      throw std::invalid_argument("tabulated covariance: |rho| must not exceed 1");
  }
  CovarianceSequence cov;
  cov.rho = values;
  cov.rho[0] = 1.0;
  cov.model_tag = "tabulated";
  return cov;
}

CovarianceSequence load_covariance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open covariance file: " + path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    double v;
    if (!(ls >> v))
      throw std::invalid_argument("covariance file: unparseable line '" + line + "'");
    values.push_back(v);
  }
  return load_tabulated_covariance(values);
}

std::vector<double> covariance_lags(const CovarianceSequence& cov, std::size_t count) {
  if (count == 0) return {};
  if (count <= cov.rho.size())
    return std::vector<double>(cov.rho.begin(), cov.rho.begin() + count);
  if (!cov.extendable())
    throw InsufficientLagsError("covariance '" + cov.model_tag + "' provides lags 0.." +
                                std::to_string(cov.max_lag()) + ", need 0.." +
                                std::to_string(count - 1));
  std::vector<double> lags(cov.rho);
  lags.reserve(count);
  const double d = *cov.arfima_d;
  for (std::size_t k = lags.size(); k < count; ++k)
    lags.push_back(lags[k - 1] * (d + k - 1.0) / (k - d));
  return lags;
}

CirculantSpectrum circulant_spectrum(const CovarianceSequence& cov,
                                     std::size_t n_points) {
  if (n_points < 2)
    throw std::invalid_argument("circulant_spectrum: need n_points >= 2");
  const std::size_t base = 2 * (n_points - 1);
  const std::size_t m = next_power_of_two(base);
  // Padding extends the lag sequence with true model values; zero padding
  // would corrupt the spectrum.
  const std::vector<double> lags = covariance_lags(cov, m / 2 + 1);

  ComplexSequence c(m);
  for (std::size_t j = 0; j <= m / 2; ++j) c[j] = lags[j];
  for (std::size_t j = m / 2 + 1; j < m; ++j) c[j] = lags[m - j];
  fft_in_place(c, FftDirection::forward);

  CirculantSpectrum spec;
  spec.g.resize(m);
  double min_eig = c[0].real();
  for (std::size_t n = 0; n < m; ++n) {
    if (std::fabs(c[n].imag()) > 1e-9)
      throw std::logic_error("circulant_spectrum: non-real eigenvalue from even input");
    spec.g[n] = c[n].real();
    min_eig = std::min(min_eig, spec.g[n]);
  }
  spec.min_eigenvalue = min_eig;
  if (min_eig < -1e-9)
    throw NotNonNegativeDefiniteError(
        "circulant embedding is not non-negative definite (min eigenvalue " +
        std::to_string(min_eig) + ")");
  for (auto& g : spec.g)
    if (g < 0.0) g = 0.0;  // clamp floating-point noise in [-1e-9, 0)
  return spec;
}

Matrix toeplitz_matrix(const CovarianceSequence& cov, std::size_t k) {
  if (k == 0) throw std::invalid_argument("toeplitz_matrix: k must be >= 1");
  const std::vector<double> lags = covariance_lags(cov, k);
  Matrix sigma(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      sigma(i, j) = lags[i > j ? i - j : j - i];
  return sigma;
}

CholeskyFactor cholesky(const Matrix& sigma) {
  const std::size_t n = sigma.rows();
  if (n == 0 || sigma.cols() != n)
    throw std::invalid_argument("cholesky: matrix must be square and non-empty");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(sigma(i, j) - sigma(j, i)) > 1e-12)
        throw std::invalid_argument("cholesky: matrix is not symmetric");

  CholeskyFactor f{Matrix(n, n)};
  Matrix& c = f.c;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = sigma(i, j);
      for (std::size_t t = 0; t < j; ++t) sum -= c(i, t) * c(j, t);
      if (i == j) {
        if (sum <= 1e-12)
          throw NotPositiveDefiniteError("cholesky: pivot " + std::to_string(i) +
                                         " is not positive (" + std::to_string(sum) + ")");
        c(i, i) = std::sqrt(sum);
      } else {
        c(i, j) = sum / c(j, j);
      }
    }
  }
  return f;
}

}  // namespace orthantmc
