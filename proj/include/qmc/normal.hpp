#pragma once

namespace qmc {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile function on (0,1). Rational approximation
/// polished with one Halley step, |Phi(result) - p| well below 1e-9.
double inverse_normal_cdf(double p);

} // namespace qmc
