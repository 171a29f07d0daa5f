#include "matgraph/analysis.hpp"

#include "matgraph/error.hpp"
#include "matgraph/normal.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace matgraph {

std::string to_string(AnalysisMode mode) {
  return mode == AnalysisMode::Oracle ? "oracle" : "data_driven";
}

AnalysisMode parse_analysis_mode(const std::string& name) {
  if (name == "oracle") return AnalysisMode::Oracle;
  if (name == "data_driven" || name == "data-driven") return AnalysisMode::DataDriven;
  throw InvalidParameter("unknown mode '" + name + "' (expected oracle or data_driven)");
}

EdgeList build_edge_list(const PairStatistics& stats, const std::vector<std::string>& labels) {
  const std::size_t p = stats.p();
  if (labels.size() != p) throw DimensionMismatch("build_edge_list: need one label per node");
  EdgeList out;
  out.labels = labels;
  out.entries.reserve(p * (p - 1) / 2);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const double w = stats.w(i, j);
      out.entries.push_back({i, j, w, two_sided_p_value(w), 0});
    }
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const Edge& a, const Edge& b) {
    if (a.p_value != b.p_value) return a.p_value < b.p_value;
    if (std::abs(a.w) != std::abs(b.w)) return std::abs(a.w) > std::abs(b.w);
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  for (std::size_t r = 0; r < out.entries.size(); ++r) out.entries[r].rank = r + 1;
  return out;
}

EdgeList top_k(const EdgeList& edges, std::size_t k) {
  EdgeList out;
  out.labels = edges.labels;
  const std::size_t keep = std::min(k, edges.entries.size());
  out.entries.assign(edges.entries.begin(), edges.entries.begin() + static_cast<std::ptrdiff_t>(keep));
  return out;
}

WhitenedData analysis_whitening(const Dataset& data, const AnalysisConfig& cfg) {
  if (data.subjects.size() < 2) throw InvalidInput("analysis needs at least 2 subjects");
  const SpatioTemporalSample x = data.to_sample();
  if (data.node_labels.size() != x.p()) throw DimensionMismatch("dataset labels do not match p");
  if (cfg.mode == AnalysisMode::Oracle) {
    if (!cfg.sigma_T) throw InvalidParameter("oracle mode needs a temporal covariance matrix");
    return whiten_oracle(x, *cfg.sigma_T);
  }
  return whiten_data_driven(x);
}

StatisticsRun analysis_statistics(const Dataset& data, const AnalysisConfig& cfg,
                                  std::vector<std::string>* warnings) {
  const WhitenedData w = analysis_whitening(data, cfg);
  if (warnings != nullptr) *warnings = w.warnings;
  try {
    return compute_statistics(w, cfg.lambda);
  } catch (const DegenerateData& e) {
    throw DegenerateData("degenerate residual variance at node '" + data.node_labels[e.node()] + "'",
                         e.node());
  }
}

InferenceReport analyze(const Dataset& data, const AnalysisConfig& cfg) {
  InferenceReport report;
  StatisticsRun run = analysis_statistics(data, cfg, &report.warnings);
  report.mode = cfg.mode;
  report.n = data.subjects.size();
  report.p = data.p();
  report.q = data.q();
  report.global = global_test(run.stats, cfg.alpha_global);
  report.fdr = fdr_threshold(run.stats, cfg.alpha_fdr);
  report.edges = build_edge_list(run.stats, data.node_labels);
  report.lambdas = run.lambdas;
  report.b_hat = run.b_hat;
  if (!run.unconverged.empty()) {
    report.warnings.push_back(std::to_string(run.unconverged.size()) +
                              " node regressions stopped at the iteration limit");
  }
  return report;
}

std::string inference_report_json(const InferenceReport& report) {
  using nlohmann::json;
  const auto& labels = report.edges.labels;
  json rejected = json::array();
  for (const auto& e : report.fdr.rejected) {
    rejected.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"source", labels[e.i]}, {"target", labels[e.j]},
                        {"w", e.w}, {"p_value", e.p_value}});
  }
  json lambdas = json::array();
  for (Eigen::Index i = 0; i < report.lambdas.size(); ++i) lambdas.push_back(report.lambdas(i));
  json doc = {
      {"schema_version", 1},
      {"kind", "inference_report"},
      {"mode", to_string(report.mode)},
      {"dimensions", {{"n", report.n}, {"p", report.p}, {"q", report.q}}},
      {"lambda", {{"values", lambdas}, {"b_hat", report.b_hat}}},
      {"global_test",
       {{"m_stat", report.global.m_stat},
        {"threshold", report.global.threshold},
        {"alpha", report.global.alpha},
        {"reject", report.global.reject},
        {"p_value", report.global.p_value},
        {"argmax_pair", {report.global.argmax_pair.first + 1, report.global.argmax_pair.second + 1}}}},
      {"fdr_test",
       {{"alpha", report.fdr.alpha},
        {"t_hat", report.fdr.t_hat},
        {"t_hat_capped", report.fdr.t_hat_capped},
        {"rejected", rejected}}},
      {"warnings", report.warnings},
  };
  return doc.dump(2) + "\n";
}

}  // namespace matgraph
