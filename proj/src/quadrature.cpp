#include "orthantmc/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace orthantmc {

namespace {

// Roots and weights of the physicists' Hermite polynomial (weight e^{-x^2})
// by Newton iteration on the orthonormal recurrence, largest root first.
void hermite_rule(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
  constexpr double kPiQuarterInv = 0.7511255444649424828587030;  // pi^(-1/4)
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const std::size_t m = (n + 1) / 2;
  double z = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    // Stroud-Secrest style initial guesses, refined below.
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = kPiQuarterInv;
      double p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) <= 1e-15 * (1.0 + std::fabs(z))) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
}

}  // namespace

GaussHermiteRule gauss_hermite_rule(std::size_t n) {
  if (n < 2) throw std::invalid_argument("gauss_hermite_rule: need at least 2 nodes");
  std::vector<double> x, w;
  hermite_rule(n, x, w);
  // Change of variables z = sqrt(2) x maps weight e^{-x^2} to phi(z) dz.
  constexpr double kSqrt2 = 1.4142135623730950488016887;
  constexpr double kInvSqrtPi = 0.5641895835477562869480795;
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = kSqrt2 * x[i];
    rule.weights[i] = kInvSqrtPi * w[i];
  }
  return rule;
}

double gauss_hermite_integrate(const std::function<double(double)>& f,
                               std::size_t nodes) {
  const GaussHermiteRule rule = gauss_hermite_rule(nodes);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

}  // namespace orthantmc
