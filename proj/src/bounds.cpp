#include "orthantmc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orthantmc/normal.hpp"
#include "orthantmc/quadrature.hpp"

namespace orthantmc {

double exchangeable_orthant_integral(std::size_t k, double s, double rho,
                                     std::size_t nodes) {
  if (!(rho >= 0.0 && rho < 1.0))
    throw std::invalid_argument("exchangeable integral: require 0 <= rho < 1");
  const double root = std::sqrt(rho);
  const double denom = std::sqrt(1.0 - rho);
  const double kk = static_cast<double>(k);
  const GaussHermiteRule rule = gauss_hermite_rule(nodes);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double z = rule.nodes[i];
    sum += rule.weights[i] * std::pow(normal_cdf((s + root * z) / denom), kk);
  }
  return std::clamp(sum, 0.0, 1.0);
}

SlepianBound slepian_bound(const CovarianceSequence& cov, const Boundary& boundary,
                           std::size_t k, std::size_t quad_nodes) {
  if (k < 1) throw std::invalid_argument("slepian_bound: k must be >= 1");
  if (quad_nodes < 16) throw std::invalid_argument("slepian_bound: need quad_nodes >= 16");

  const std::vector<double> lags = covariance_lags(cov, k);
  double rho_max = 0.0;
  for (std::size_t j = 1; j < k; ++j) rho_max = std::max(rho_max, lags[j]);
  if (rho_max >= 1.0 - 1e-12)
    throw std::invalid_argument("slepian_bound: degenerate correlation rho_max >= 1");

  SlepianBound bound;
  bound.k = k;
  bound.rho_max = rho_max;
  bound.s_max = boundary.max_over(k);

  if (rho_max > 0.0) {
    bound.case_tag = SlepianBound::Case::exchangeable;
    bound.value = exchangeable_orthant_integral(k, bound.s_max, rho_max, quad_nodes);
    const double doubled =
        exchangeable_orthant_integral(k, bound.s_max, rho_max, 2 * quad_nodes);
    bound.quad_delta = std::fabs(doubled - bound.value);
    bound.stable = bound.quad_delta < 1e-8;
  } else {
    bound.case_tag = SlepianBound::Case::independent;
    bound.value = std::pow(normal_cdf(bound.s_max), static_cast<double>(k));
    bound.quad_delta = 0.0;
    bound.stable = true;
  }
  return bound;
}

std::vector<double> slepian_bound_curve(const CovarianceSequence& cov,
                                        const Boundary& boundary, std::size_t k_max,
                                        std::size_t quad_nodes) {
  std::vector<double> bounds(k_max + 1, 1.0);
  for (std::size_t k = 1; k <= k_max; ++k)
    bounds[k] = slepian_bound(cov, boundary, k, quad_nodes).value;
  return bounds;
}

}  // namespace orthantmc
