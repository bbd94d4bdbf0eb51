#pragma once

namespace orthantmc {

// Standard normal density.
double normal_pdf(double x);

// Standard normal CDF; accepts +-infinity. Absolute error below 1e-14.
double normal_cdf(double x);

// Inverse of the standard normal CDF on (0,1). Throws std::domain_error
// outside the open interval.
double normal_quantile(double p);

}  // namespace orthantmc
