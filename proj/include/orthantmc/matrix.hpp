#pragma once

#include <cstddef>
#include <vector>

namespace orthantmc {

// Dense row-major matrix; dimensions here stay small (k up to a few hundred).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<double>& data() const { return a_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

// Lower-triangular Cholesky factor with strictly positive diagonal;
// c * c^T reproduces the factored matrix.
struct CholeskyFactor {
  Matrix c;
  std::size_t dim() const { return c.rows(); }
};

// Throws std::invalid_argument if sigma is not square/symmetric and
// NotPositiveDefiniteError if any pivot falls to 1e-12 or below.
CholeskyFactor cholesky(const Matrix& sigma);

}  // namespace orthantmc
