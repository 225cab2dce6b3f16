#pragma once

namespace trn {

// Inverse CDF of the standard normal. q must lie strictly in (0,1);
// throws std::domain_error otherwise. Absolute error below 1e-8.
double gaussian_quantile(double q);

// Standard normal CDF (thin erf wrapper, kept next to its inverse).
double gaussian_cdf(double x);

}  // namespace trn
