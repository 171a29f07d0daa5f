#pragma once

#include "matgraph/statistics.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace matgraph {

struct GlobalTestResult {
  double m_stat = 0.0;     // max_{i<j} W_ij^2
  double threshold = 0.0;  // q_alpha + 4 log p - log log p
  double alpha = 0.05;
  bool reject = false;
  double p_value = 1.0;
  std::pair<std::size_t, std::size_t> argmax_pair{0, 1};
};

struct RejectedPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double w = 0.0;
  double p_value = 1.0;  // two-sided normal
};

struct FdrResult {
  double t_hat = 0.0;
  double alpha = 0.1;
  bool t_hat_capped = false;
  std::vector<RejectedPair> rejected;  // |W| descending
};

/// exp{-(8 pi)^{-1/2} exp(-t/2)}
double gumbel_cdf(double t);

/// 1 - alpha quantile of gumbel_cdf; throws InvalidParameter unless 0 < alpha < 1.
double gumbel_quantile(double alpha);

/// q_alpha + 4 log p - log log p; throws InvalidParameter for p <= 2.
double global_threshold(std::size_t p, double alpha);

/// M_nq - 4 log p + log log p
double centered_max_statistic(double m_stat, std::size_t p);

GlobalTestResult global_test(const PairStatistics& stats, double alpha);

/// Thresholds |W| at the infimum of t in [0, 2 sqrt(log p)] whose estimated
/// false discovery proportion 2(1 - Phi(t)) (p^2 - p)/2 / max(R(t), 1) is at
/// most alpha. Falls back to 2 sqrt(log p) (t_hat_capped) when none is.
FdrResult fdr_threshold(const PairStatistics& stats, double alpha);

}  // namespace matgraph
