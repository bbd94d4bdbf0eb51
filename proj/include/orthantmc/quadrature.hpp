#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace orthantmc {

// Gauss-Hermite rule in probabilists' form:
//   integral f(z) phi(z) dz  ~=  sum_i weights[i] * f(nodes[i])
// with phi the standard normal density. Exact for polynomials of degree
// <= 2n-1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Throws std::invalid_argument for n < 2.
GaussHermiteRule gauss_hermite_rule(std::size_t n);

double gauss_hermite_integrate(const std::function<double(double)>& f,
                               std::size_t nodes);

}  // namespace orthantmc
