#include "matgraph/error.hpp"
#include "matgraph/experiment.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace matgraph;

namespace {

ExperimentConfig small(ExperimentKind kind) {
  ExperimentConfig cfg = ExperimentConfig::defaults(kind);
  cfg.p = 10;
  cfg.n = 8;
  cfg.q = 6;
  cfg.replications = 6;
  cfg.threads = 1;
  return cfg;
}

double w_sd(const PairStatistics& s) {
  double sq = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < s.p(); ++i) {
    for (std::size_t j = i + 1; j < s.p(); ++j) {
      sq += s.w(i, j) * s.w(i, j);
      ++count;
    }
  }
  return std::sqrt(sq / static_cast<double>(count));
}

}  // namespace

TEST(ExperimentConfig, Defaults) {
  const auto g = ExperimentConfig::defaults(ExperimentKind::GlobalSize);
  EXPECT_EQ(g.n, 30u);
  EXPECT_EQ(g.q, 20u);
  EXPECT_EQ(g.replications, 500u);
  EXPECT_EQ(g.lambda.kind, LambdaPolicy::Kind::Kappa);
  const auto f = ExperimentConfig::defaults(ExperimentKind::Fdr);
  EXPECT_EQ(f.n, 20u);
  EXPECT_EQ(f.replications, 100u);
  EXPECT_EQ(f.alphas, std::vector<double>{0.1});
  EXPECT_EQ(f.lambda.kind, LambdaPolicy::Kind::Tuned);
}

TEST(ExperimentConfig, FromKeyValues) {
  const KeyValues kv = parse_key_values(
      "# comment\nexperiment = fdr\np = 20\nmodel = model3\nalpha = 0.05, 0.1\n"
      "methods = oracle,vector_normal\nseed = 7\nlambda = kappa\nkappa = 1.5\n");
  const auto cfg = ExperimentConfig::from_key_values(kv);
  EXPECT_EQ(cfg.kind, ExperimentKind::Fdr);
  EXPECT_EQ(cfg.p, 20u);
  EXPECT_EQ(cfg.n, 20u);
  EXPECT_EQ(cfg.model, ModelKind::Model3);
  EXPECT_EQ(cfg.alphas, (std::vector<double>{0.05, 0.1}));
  EXPECT_EQ(cfg.methods, (std::vector<Method>{Method::Oracle, Method::VectorNormal}));
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.lambda.kind, LambdaPolicy::Kind::Kappa);
  EXPECT_DOUBLE_EQ(cfg.lambda.kappa, 1.5);
}

TEST(ExperimentConfig, Rejections) {
  EXPECT_THROW(ExperimentConfig::from_key_values({{"replications", "0"}}), InvalidParameter);
  EXPECT_THROW(ExperimentConfig::from_key_values({{"alpha", "1.2"}}), InvalidParameter);
  EXPECT_THROW(ExperimentConfig::from_key_values({{"bogus", "1"}}), InvalidParameter);
  EXPECT_THROW(ExperimentConfig::from_key_values({{"p", "-3"}}), InvalidParameter);
  EXPECT_THROW(ExperimentConfig::from_key_values({{"experiment", "fdr"}, {"model", "model2"}, {"p", "15"}}),
               InvalidParameter);
  EXPECT_THROW(ExperimentConfig::from_key_values({{"methods", "magic"}}), InvalidParameter);
  EXPECT_THROW(parse_key_values("p 5\n"), FormatError);
}

TEST(Experiment, ReproducibleAcrossThreadCounts) {
  ExperimentConfig cfg = small(ExperimentKind::GlobalPower);
  const auto a = run_experiment(cfg);
  cfg.threads = 3;
  const auto b = run_experiment(cfg);
  ASSERT_EQ(a.outcomes.size(), b.outcomes.size());
  EXPECT_EQ(a.outcomes.size(), 6u * 3u);
  for (std::size_t k = 0; k < a.outcomes.size(); ++k) {
    EXPECT_EQ(a.outcomes[k].m_stat, b.outcomes[k].m_stat);
    EXPECT_EQ(a.outcomes[k].method, b.outcomes[k].method);
  }
  cfg.seed += 1;
  EXPECT_NE(run_experiment(cfg).outcomes[0].m_stat, a.outcomes[0].m_stat);
}

TEST(Experiment, GlobalSummariesAreRates) {
  ExperimentConfig cfg = small(ExperimentKind::GlobalSize);
  cfg.alphas = {0.05, 0.5};
  const auto rep = run_experiment(cfg);
  EXPECT_EQ(rep.summaries.size(), 6u);
  for (const auto& s : rep.summaries) {
    EXPECT_GE(s.rate, 0.0);
    EXPECT_LE(s.rate, 1.0);
    EXPECT_NEAR(s.rate_se, binomial_se(s.rate, 6), 1e-15);
    EXPECT_LE(rep.summary(s.method, 0.05).rate, rep.summary(s.method, 0.5).rate);
  }
  for (const auto& o : rep.outcomes) {
    EXPECT_NEAR(o.centered_stat, centered_max_statistic(o.m_stat, 10), 1e-12);
    EXPECT_EQ(o.reject, o.m_stat >= global_threshold(10, o.alpha));
  }
}

TEST(Experiment, FdrOutcomesConsistent) {
  ExperimentConfig cfg = small(ExperimentKind::Fdr);
  cfg.replications = 3;
  const auto rep = run_experiment(cfg);
  for (const auto& o : rep.outcomes) {
    EXPECT_EQ(o.rejections, o.true_discoveries + o.false_discoveries);
    EXPECT_EQ(o.true_edges, 9u + 8u);  // Model1 at p = 10
    EXPECT_GE(o.b_hat, 1);
    EXPECT_LE(o.fdp, 1.0);
    EXPECT_LE(o.tpp, 1.0);
  }
  const auto& s = rep.summary(Method::Oracle, 0.1);
  EXPECT_GE(s.power, 0.0);
  EXPECT_LE(s.power, 1.0);
}

TEST(Experiment, WhiteningIsIrrelevantWithoutTemporalDependence) {
  ExperimentConfig cfg = small(ExperimentKind::GlobalSize);
  cfg.temporal_rho = 0.0;
  cfg.methods = {Method::Oracle, Method::VectorNormal};
  const auto rep = run_experiment(cfg);
  const auto oracle = rep.outcomes_for(Method::Oracle, 0.05);
  const auto raw = rep.outcomes_for(Method::VectorNormal, 0.05);
  for (std::size_t r = 0; r < oracle.size(); ++r) EXPECT_NEAR(oracle[r].m_stat, raw[r].m_stat, 1e-9);
}

TEST(Experiment, IgnoringTemporalDependenceInflatesStatistics) {
  Rng rng(41);
  const std::size_t q = 20;
  const SymMatrix st = ar1_covariance(q, 0.4);
  const auto x = sample_matrix_normal(KroneckerModel::from_spatial_precision(null_spatial(30), st), 30, rng);
  const double raw = w_sd(vector_normal_baseline(x));
  const double white = w_sd(compute_statistics(whiten_oracle(x, st), LambdaPolicy::fixed(2.0)).stats);
  EXPECT_NEAR(white, 1.0, 0.1);
  // variance factor (1 + rho^2) / (1 - rho^2) = 1.38, so sd near 1.17
  EXPECT_GT(raw, 1.1);
}

TEST(Experiment, PowerDominatesSize) {
  ExperimentReport size, power;
  size.summaries = {{Method::Oracle, 0.05, 0.04, 0, 0, 0}};
  power.summaries = {{Method::Oracle, 0.05, 0.70, 0, 0, 0}};
  EXPECT_TRUE(power_dominates_size(size, power));
  power.summaries[0].rate = 0.01;
  EXPECT_FALSE(power_dominates_size(size, power));
}

TEST(Experiment, ReportFiles) {
  ExperimentConfig cfg = small(ExperimentKind::GlobalSize);
  cfg.replications = 2;
  const auto rep = run_experiment(cfg);
  const auto doc = nlohmann::json::parse(report_json(rep));
  EXPECT_EQ(doc["schema_version"], 1);
  const std::string csv = report_csv(rep);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), 1u + rep.outcomes.size());
  const auto dir = std::filesystem::temp_directory_path() / "matgraph_report_test";
  std::filesystem::remove_all(dir);
  write_report(rep, dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "replications.csv"));
  std::filesystem::remove_all(dir);
}
