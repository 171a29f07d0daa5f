#pragma once

#include "matgraph/config.hpp"
#include "matgraph/inference.hpp"
#include "matgraph/simulate.hpp"
#include "matgraph/statistics.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace matgraph {

enum class ExperimentKind { GlobalSize, GlobalPower, Fdr };
enum class Method { Oracle, DataDriven, VectorNormal };

std::string to_string(ExperimentKind kind);
std::string to_string(Method method);
ExperimentKind parse_experiment_kind(const std::string& name);
Method parse_method(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::GlobalSize;
  std::size_t p = 50;
  std::size_t n = 30;
  std::size_t q = 20;
  ModelKind model = ModelKind::Model1;  // used by Fdr only
  std::vector<double> alphas{0.05};
  std::size_t replications = 500;
  std::uint64_t seed = 20150901;
  std::vector<Method> methods{Method::Oracle, Method::DataDriven, Method::VectorNormal};
  LambdaPolicy lambda = LambdaPolicy::fixed(2.0);
  double temporal_rho = 0.4;  // Sigma_T = ar1(q, rho)
  std::size_t threads = 0;    // 0 = hardware concurrency

  /// Defaults for a kind: global runs use n=30, q=20, 500 replications,
  /// kappa = 2; FDR runs use n=20, q=20, 100 replications, tuned lambda.
  static ExperimentConfig defaults(ExperimentKind kind);

  /// Starts from defaults(experiment) and applies every recognised key.
  /// Throws InvalidParameter on unknown keys or invalid values.
  static ExperimentConfig from_key_values(const KeyValues& kv);

  void validate() const;
};

/// Everything recorded for one (replication, method, alpha) cell.
struct ReplicationOutcome {
  std::size_t replication = 0;
  Method method = Method::Oracle;
  double alpha = 0.0;
  // global
  double m_stat = 0.0;
  double centered_stat = 0.0;  // M - 4 log p + log log p
  bool reject = false;
  double p_value = 1.0;
  // fdr
  std::size_t rejections = 0;
  std::size_t false_discoveries = 0;
  std::size_t true_discoveries = 0;
  std::size_t true_edges = 0;
  double fdp = 0.0;
  double tpp = 0.0;
  double t_hat = 0.0;
  int b_hat = 0;
};

struct MethodSummary {
  Method method = Method::Oracle;
  double alpha = 0.0;
  double rate = 0.0;  // rejection frequency (global) or mean FDP (fdr)
  double rate_se = 0.0;
  double power = 0.0;  // mean TPP (fdr only)
  double power_se = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<MethodSummary> summaries;
  std::vector<ReplicationOutcome> outcomes;  // ordered by replication, method, alpha
  double wall_clock_seconds = 0.0;

  const MethodSummary& summary(Method method, double alpha) const;
  /// Outcomes of one method at one level, in replication order.
  std::vector<ReplicationOutcome> outcomes_for(Method method, double alpha) const;
};

/// sqrt(r (1 - r) / reps)
double binomial_se(double rate, std::size_t reps);

ExperimentReport run_global_experiment(const ExperimentConfig& cfg);
ExperimentReport run_fdr_experiment(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Pair statistics from the raw stacked columns, ignoring temporal dependence.
PairStatistics vector_normal_baseline(const SpatioTemporalSample& x,
                                      const LambdaPolicy& policy = LambdaPolicy::fixed(2.0));

/// For every method and level present in both reports: power >= size.
bool power_dominates_size(const ExperimentReport& size, const ExperimentReport& power);

std::string report_json(const ExperimentReport& report);
std::string report_csv(const ExperimentReport& report);

/// Writes report.json and replications.csv into `dir` (created if missing).
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace matgraph
