#pragma once

#include "matgraph/dataset.hpp"
#include "matgraph/inference.hpp"
#include "matgraph/statistics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace matgraph {

struct Edge {
  std::size_t i = 0;  // 0-based, i < j
  std::size_t j = 0;
  double w = 0.0;
  double p_value = 1.0;
  std::size_t rank = 0;  // 1-based

  bool operator==(const Edge&) const = default;
};

struct EdgeList {
  std::vector<Edge> entries;  // p_value ascending
  std::vector<std::string> labels;

  bool operator==(const EdgeList&) const = default;
};

/// All pairs i < j ranked by two-sided p-value (ties broken by larger |W|,
/// then by (i, j)).
EdgeList build_edge_list(const PairStatistics& stats, const std::vector<std::string>& labels);

/// First `k` entries.
EdgeList top_k(const EdgeList& edges, std::size_t k);

enum class AnalysisMode { Oracle, DataDriven };

struct AnalysisConfig {
  AnalysisMode mode = AnalysisMode::DataDriven;
  std::optional<SymMatrix> sigma_T;  // required for Oracle
  double alpha_global = 0.05;
  double alpha_fdr = 0.1;
  LambdaPolicy lambda = LambdaPolicy::tuned();
};

struct InferenceReport {
  AnalysisMode mode = AnalysisMode::DataDriven;
  std::size_t n = 0, p = 0, q = 0;
  GlobalTestResult global;
  FdrResult fdr;
  EdgeList edges;
  Vector lambdas;
  int b_hat = 0;
  std::vector<std::string> warnings;
};

/// Whitening, lambda selection, pair statistics, both tests and the ranked
/// edge list for one group of subjects. DegenerateData is rethrown with the
/// offending node's label.
InferenceReport analyze(const Dataset& data, const AnalysisConfig& cfg);

/// Whitened data for the configured mode; throws InvalidParameter when
/// oracle mode has no temporal covariance.
WhitenedData analysis_whitening(const Dataset& data, const AnalysisConfig& cfg);

/// Statistics only (no tests), for the tune / test verbs.
StatisticsRun analysis_statistics(const Dataset& data, const AnalysisConfig& cfg,
                                  std::vector<std::string>* warnings = nullptr);

std::string to_string(AnalysisMode mode);
AnalysisMode parse_analysis_mode(const std::string& name);

std::string inference_report_json(const InferenceReport& report);

}  // namespace matgraph
