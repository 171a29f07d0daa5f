#include "matgraph/normal.hpp"

#include "matgraph/error.hpp"

#include <cmath>
#include <numbers>

namespace matgraph {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double two_sided_p_value(double w) { return 2.0 * normal_sf(std::abs(w)); }

namespace {

// Acklam's rational approximation (relative error ~1e-9), used as the
// starting point for one Halley step against erfc.
double acklam(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  if (p < low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - low) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double halley(double x, double residual) {
  // residual = Phi(x) - target
  const double u = residual * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("normal_quantile: p must lie in (0, 1)");
  const double x = acklam(p);
  // Refine against whichever tail is represented more accurately.
  if (p < 0.5) return halley(x, normal_cdf(x) - p);
  return halley(x, (1.0 - p) - normal_sf(x));
}

double normal_isf(double tail) {
  if (!(tail > 0.0 && tail < 1.0)) throw InvalidParameter("normal_isf: tail must lie in (0, 1)");
  if (tail < 0.5) {
    const double x = -acklam(tail);
    // Phi(x) - (1 - tail) == tail - sf(x)
    return halley(x, tail - normal_sf(x));
  }
  return normal_quantile(1.0 - tail);
}

}  // namespace matgraph
