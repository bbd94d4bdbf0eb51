#pragma once

#include <cstddef>
#include <vector>

#include "orthantmc/boundary.hpp"
#include "orthantmc/covariance.hpp"

namespace orthantmc {

// Slepian-inequality upper bound on P_k(S, Sigma): the exchangeable-case
// integral when the largest off-diagonal correlation is positive, the
// independence bound Phi(S_max)^k otherwise.
struct SlepianBound {
  std::size_t k = 0;
  double s_max = 0.0;
  double rho_max = 0.0;
  double value = 1.0;
  enum class Case { exchangeable, independent } case_tag = Case::independent;
  double quad_delta = 0.0;  // doubled-node Richardson difference
  bool stable = true;       // quad_delta < 1e-8
};

// integral Phi^k((s + sqrt(rho) z)/sqrt(1-rho)) phi(z) dz by Gauss-Hermite
// quadrature; requires 0 <= rho < 1.
double exchangeable_orthant_integral(std::size_t k, double s, double rho,
                                     std::size_t nodes);

// rho_max is taken over lags 1..k-1 and S_max over t = 1..k (the queried
// horizon). Throws std::invalid_argument for quad_nodes < 16 and a
// degenerate-correlation error when rho_max >= 1.
SlepianBound slepian_bound(const CovarianceSequence& cov, const Boundary& boundary,
                           std::size_t k, std::size_t quad_nodes = 64);

// bounds[k] for k = 1..k_max; index 0 is 1.
std::vector<double> slepian_bound_curve(const CovarianceSequence& cov,
                                        const Boundary& boundary, std::size_t k_max,
                                        std::size_t quad_nodes = 64);

}  // namespace orthantmc
