#include "matgraph/inference.hpp"

#include "matgraph/error.hpp"
#include "matgraph/normal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace matgraph {

namespace {

const double kInvSqrt8Pi = 1.0 / std::sqrt(8.0 * std::numbers::pi);

void check_alpha(double alpha, const char* where) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidParameter(std::string(where) + ": alpha must lie in (0, 1)");
  }
}

}  // namespace

double gumbel_cdf(double t) { return std::exp(-kInvSqrt8Pi * std::exp(-t / 2.0)); }

double gumbel_quantile(double alpha) {
  check_alpha(alpha, "gumbel_quantile");
  return -std::log(8.0 * std::numbers::pi) - 2.0 * std::log(-std::log1p(-alpha));
}

double global_threshold(std::size_t p, double alpha) {
  if (p <= 2) throw InvalidParameter("global test needs p >= 3 (log log p must be positive)");
  const double lp = std::log(static_cast<double>(p));
  return gumbel_quantile(alpha) + 4.0 * lp - std::log(lp);
}

double centered_max_statistic(double m_stat, std::size_t p) {
  const double lp = std::log(static_cast<double>(p));
  return m_stat - 4.0 * lp + std::log(lp);
}

GlobalTestResult global_test(const PairStatistics& stats, double alpha) {
  const std::size_t p = stats.p();
  GlobalTestResult r;
  r.alpha = alpha;
  r.threshold = global_threshold(p, alpha);
  r.m_stat = -1.0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const double w2 = stats.w(i, j) * stats.w(i, j);
      if (w2 > r.m_stat) {
        r.m_stat = w2;
        r.argmax_pair = {i, j};
      }
    }
  }
  r.reject = r.m_stat >= r.threshold;
  const double pv = 1.0 - gumbel_cdf(centered_max_statistic(r.m_stat, p));
  r.p_value = std::clamp(pv, 0.0, 1.0);
  return r;
}

FdrResult fdr_threshold(const PairStatistics& stats, double alpha) {
  check_alpha(alpha, "fdr_threshold");
  const std::size_t p = stats.p();
  if (p < 2) throw InvalidParameter("fdr_threshold: p must be at least 2");
  const double pd = static_cast<double>(p);
  const double bound = 2.0 * std::sqrt(std::log(pd));
  const double null_count = (pd * pd - pd) / 2.0;

  std::vector<double> sorted_abs;
  sorted_abs.reserve(p * (p - 1) / 2);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) sorted_abs.push_back(std::abs(stats.w(i, j)));
  }
  std::sort(sorted_abs.begin(), sorted_abs.end());

  auto rejections = [&](double t) {
    const auto first = std::lower_bound(sorted_abs.begin(), sorted_abs.end(), t);
    return static_cast<double>(sorted_abs.end() - first);
  };
  auto feasible = [&](double t) {
    return 2.0 * normal_sf(t) * null_count / std::max(rejections(t), 1.0) <= alpha;
  };

  FdrResult out;
  out.alpha = alpha;
  out.t_hat = bound;
  out.t_hat_capped = true;
  // R(t) is constant on (c[k-1], c[k]] between consecutive candidates, so
  // once c[k] is the first feasible candidate the infimum solves
  // 2(1 - Phi(t)) N / max(R, 1) = alpha inside that interval.
  std::vector<double> candidates{0.0};
  for (double a : sorted_abs) {
    if (a > 0.0 && a <= bound) candidates.push_back(a);
  }
  candidates.push_back(bound);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (!feasible(candidates[k])) continue;
    double t = candidates[k];
    if (k > 0 && candidates[k - 1] < t) {
      const double lower = candidates[k - 1];
      const double r = std::max(rejections(t), 1.0);
      const double solved = normal_isf(alpha * r / (2.0 * null_count));
      // lower itself is infeasible, so stay strictly above it
      t = std::clamp(solved, std::nextafter(lower, bound), t);
    }
    out.t_hat = t;
    out.t_hat_capped = t >= bound;
    break;
  }

  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const double w = stats.w(i, j);
      if (std::abs(w) >= out.t_hat) out.rejected.push_back({i, j, w, two_sided_p_value(w)});
    }
  }
  std::stable_sort(out.rejected.begin(), out.rejected.end(),
                   [](const RejectedPair& a, const RejectedPair& b) {
                     return std::abs(a.w) > std::abs(b.w);
                   });
  return out;
}

}  // namespace matgraph
