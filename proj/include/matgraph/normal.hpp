#pragma once

namespace matgraph {

// Standard normal distribution helpers.

double normal_cdf(double x);

/// 1 - Phi(x), computed without cancellation for large x.
double normal_sf(double x);

/// Phi^{-1}(p) for p in (0, 1); throws InvalidParameter otherwise.
double normal_quantile(double p);

/// Inverse of the upper tail: returns x with 1 - Phi(x) = tail.
double normal_isf(double tail);

/// 2 (1 - Phi(|w|))
double two_sided_p_value(double w);

}  // namespace matgraph
