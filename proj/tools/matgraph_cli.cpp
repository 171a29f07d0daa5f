// Command-line front end: simulate, global-test, fdr-test, tune, analyze, export.
//
// Every verb also accepts --config FILE with `key = value` lines; keys are
// the long flag names with '-' replaced by '_', and config values override
// flags given on the command line.
//
// Exit codes: 0 success, 2 input errors, 3 degenerate data, 1 anything else.

#include "matgraph/analysis.hpp"
#include "matgraph/config.hpp"
#include "matgraph/dataset.hpp"
#include "matgraph/error.hpp"
#include "matgraph/experiment.hpp"
#include "matgraph/network_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace matgraph;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;

/// Flag values keyed like the config file, filled only for flags actually given.
struct Settings {
  KeyValues values;

  void merge_config(const std::string& path) {
    if (path.empty()) return;
    for (auto& [k, v] : read_key_values(path)) values[k] = v;
  }
  bool has(const std::string& key) const { return values.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }
  double real(const std::string& key, double fallback) const {
    return has(key) ? parse_double(key, values.at(key)) : fallback;
  }
  std::size_t count(const std::string& key, std::size_t fallback) const {
    return has(key) ? parse_count(key, values.at(key)) : fallback;
  }
};

/// Registers a string option whose value lands in settings under `key`.
CLI::Option* add(CLI::App* app, Settings& s, const std::string& flag, const std::string& key,
                 const std::string& help) {
  return app->add_option_function<std::string>(
      flag, [&s, key](const std::string& v) { s.values[key] = v; }, help);
}

void add_data_options(CLI::App* app, Settings& s) {
  add(app, s, "--data", "data", "Directory of per-subject CSVs or a long-format CSV");
  add(app, s, "--mode", "mode", "oracle or data_driven (default data_driven)");
  add(app, s, "--sigma-t", "sigma_t", "Temporal covariance CSV (oracle mode)");
  add(app, s, "--window", "window", "Average this many consecutive time points first");
  add(app, s, "--lambda", "lambda", "tuned or kappa");
  add(app, s, "--kappa", "kappa", "Penalty constant when --lambda kappa (default 2)");
}

Dataset load_for(const Settings& s) {
  if (!s.has("data")) throw InvalidParameter("--data is required");
  Dataset data = load_dataset(s.get("data", ""));
  const std::size_t window = s.count("window", 1);
  if (window != 1) data = temporal_downsample(data, window);
  return data;
}

AnalysisConfig analysis_config(const Settings& s, LambdaPolicy default_policy) {
  AnalysisConfig cfg;
  cfg.mode = parse_analysis_mode(s.get("mode", "data_driven"));
  if (s.has("sigma_t")) cfg.sigma_T = SymMatrix(read_matrix_csv(s.get("sigma_t", "")));
  cfg.lambda = default_policy;
  if (s.has("lambda")) {
    const std::string l = s.get("lambda", "");
    if (l == "tuned") {
      cfg.lambda = LambdaPolicy::tuned();
    } else if (l == "kappa") {
      cfg.lambda = LambdaPolicy::fixed(2.0);
    } else {
      throw InvalidParameter("--lambda must be tuned or kappa");
    }
  }
  cfg.lambda.kappa = s.real("kappa", cfg.lambda.kappa);
  return cfg;
}

void emit(const Settings& s, const std::string& text) {
  if (s.has("out")) {
    write_file_atomic(s.get("out", ""), text);
  } else {
    std::cout << text;
  }
}

int run_simulate(const Settings& s) {
  KeyValues kv;
  for (const auto& [k, v] : s.values) {
    if (k != "out_dir") kv[k] = v;
  }
  const ExperimentConfig cfg = ExperimentConfig::from_key_values(kv);
  const ExperimentReport report = run_experiment(cfg);
  if (s.has("out_dir")) {
    write_report(report, s.get("out_dir", ""));
  }
  std::cout << report_json(report);
  return 0;
}

int run_global(const Settings& s) {
  const Dataset data = load_for(s);
  AnalysisConfig cfg = analysis_config(s, LambdaPolicy::fixed(2.0));
  const StatisticsRun run = analysis_statistics(data, cfg);
  const GlobalTestResult g = global_test(run.stats, s.real("alpha", 0.05));
  nlohmann::json doc = {
      {"schema_version", 1},
      {"kind", "global_test"},
      {"m_stat", g.m_stat},
      {"threshold", g.threshold},
      {"alpha", g.alpha},
      {"reject", g.reject},
      {"p_value", g.p_value},
      {"argmax_pair", {g.argmax_pair.first + 1, g.argmax_pair.second + 1}},
      {"argmax_labels", {data.node_labels[g.argmax_pair.first], data.node_labels[g.argmax_pair.second]}},
  };
  emit(s, doc.dump(2) + "\n");
  return 0;
}

int run_fdr(const Settings& s) {
  const Dataset data = load_for(s);
  AnalysisConfig cfg = analysis_config(s, LambdaPolicy::tuned());
  const StatisticsRun run = analysis_statistics(data, cfg);
  const FdrResult f = fdr_threshold(run.stats, s.real("alpha", 0.1));
  nlohmann::json rejected = nlohmann::json::array();
  for (const auto& e : f.rejected) {
    rejected.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"source", data.node_labels[e.i]},
                        {"target", data.node_labels[e.j]}, {"w", e.w}, {"p_value", e.p_value}});
  }
  nlohmann::json doc = {{"schema_version", 1}, {"kind", "fdr_test"}, {"alpha", f.alpha},
                        {"t_hat", f.t_hat},    {"t_hat_capped", f.t_hat_capped}, {"b_hat", run.b_hat},
                        {"rejected", rejected}};
  emit(s, doc.dump(2) + "\n");
  return 0;
}

int run_tune(const Settings& s) {
  const Dataset data = load_for(s);
  AnalysisConfig cfg = analysis_config(s, LambdaPolicy::tuned());
  const TuningResult t = tune_lambda(analysis_whitening(data, cfg));
  nlohmann::json lambdas = nlohmann::json::array();
  for (Eigen::Index i = 0; i < t.lambdas.size(); ++i) lambdas.push_back(t.lambdas(i));
  nlohmann::json doc = {{"schema_version", 1}, {"kind", "tuning"},         {"b_hat", t.b_hat},
                        {"objective", t.objective}, {"lambdas", lambdas}};
  emit(s, doc.dump(2) + "\n");
  return 0;
}

int run_analyze(const Settings& s) {
  const Dataset data = load_for(s);
  AnalysisConfig cfg = analysis_config(s, LambdaPolicy::tuned());
  cfg.alpha_global = s.real("alpha_global", 0.05);
  cfg.alpha_fdr = s.real("alpha_fdr", 0.1);
  const InferenceReport report = analyze(data, cfg);
  const std::string json = inference_report_json(report);
  if (s.has("out_dir")) {
    const fs::path dir = s.get("out_dir", "");
    fs::create_directories(dir);
    write_file_atomic(dir / "report.json", json);
    write_file_atomic(dir / "edges.csv", format_network(report.edges, NetworkFormat::Csv));
    const NetworkFormat fmt = parse_network_format(s.get("format", "dot"));
    const std::string ext = s.get("format", "dot");
    std::optional<std::size_t> top;
    if (s.has("top")) top = s.count("top", 30);
    export_network(report.edges, fmt, dir / ("network." + ext), top);
  }
  std::cout << json;
  return 0;
}

int run_export(const Settings& s) {
  if (!s.has("edges")) throw InvalidParameter("--edges is required");
  const EdgeList edges = read_edge_csv(s.get("edges", ""));
  const NetworkFormat fmt = parse_network_format(s.get("format", "json"));
  std::optional<std::size_t> top;
  if (s.has("top")) top = s.count("top", 30);
  if (s.has("out")) {
    export_network(edges, fmt, s.get("out", ""), top);
  } else {
    std::cout << format_network(top ? top_k(edges, *top) : edges, fmt);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypothesis tests for the spatial precision matrix of matrix-normal data"};
  app.require_subcommand(1);
  Settings settings;
  std::string config_path;

  auto* simulate = app.add_subcommand("simulate", "Run a size/power or FDR simulation experiment");
  add(simulate, settings, "--experiment", "experiment", "global_size, global_power or fdr");
  add(simulate, settings, "-p,--p", "p", "Number of locations");
  add(simulate, settings, "-n,--n", "n", "Number of subjects");
  add(simulate, settings, "-q,--q", "q", "Number of time points");
  add(simulate, settings, "--model", "model", "model1, model2 or model3 (fdr)");
  add(simulate, settings, "--alpha", "alpha", "Comma-separated levels");
  add(simulate, settings, "--replications", "replications", "Number of replications");
  add(simulate, settings, "--seed", "seed", "64-bit seed");
  add(simulate, settings, "--methods", "methods", "Comma list of oracle,data_driven,vector_normal");
  add(simulate, settings, "--lambda", "lambda", "tuned or kappa");
  add(simulate, settings, "--kappa", "kappa", "Penalty constant");
  add(simulate, settings, "--rho", "rho", "AR(1) temporal correlation (default 0.4)");
  add(simulate, settings, "--threads", "threads", "Worker threads (0 = all cores)");
  add(simulate, settings, "--out-dir", "out_dir", "Write report.json and replications.csv here");

  auto* global = app.add_subcommand("global-test", "Test whether the spatial precision matrix is diagonal");
  add_data_options(global, settings);
  add(global, settings, "--alpha", "alpha", "Significance level (default 0.05)");
  add(global, settings, "--out", "out", "Write JSON here instead of stdout");

  auto* fdr = app.add_subcommand("fdr-test", "FDR-controlled edge selection");
  add_data_options(fdr, settings);
  add(fdr, settings, "--alpha", "alpha", "FDR level (default 0.1)");
  add(fdr, settings, "--out", "out", "Write JSON here instead of stdout");

  auto* tune = app.add_subcommand("tune", "Select the lasso penalty from the data");
  add_data_options(tune, settings);
  add(tune, settings, "--out", "out", "Write JSON here instead of stdout");

  auto* analyze_cmd = app.add_subcommand("analyze", "Global test, FDR test and ranked edge list");
  add_data_options(analyze_cmd, settings);
  add(analyze_cmd, settings, "--alpha-global", "alpha_global", "Global test level (default 0.05)");
  add(analyze_cmd, settings, "--alpha-fdr", "alpha_fdr", "FDR level (default 0.1)");
  add(analyze_cmd, settings, "--out-dir", "out_dir", "Write report.json, edges.csv and network.<format>");
  add(analyze_cmd, settings, "--format", "format", "Network format: json, dot or csv (default dot)");
  add(analyze_cmd, settings, "--top", "top", "Keep only the top k edges in the network file");

  auto* export_cmd = app.add_subcommand("export", "Convert an edge CSV to json, dot or csv");
  add(export_cmd, settings, "--edges", "edges", "Edge CSV written by analyze");
  add(export_cmd, settings, "--format", "format", "json, dot or csv (default json)");
  add(export_cmd, settings, "--top", "top", "Keep only the top k edges");
  add(export_cmd, settings, "--out", "out", "Output file (default stdout)");

  for (auto* sub : {simulate, global, fdr, tune, analyze_cmd, export_cmd}) {
    sub->add_option("--config", config_path, "key = value file; overrides flags");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    settings.merge_config(config_path);
    if (simulate->parsed()) return run_simulate(settings);
    if (global->parsed()) return run_global(settings);
    if (fdr->parsed()) return run_fdr(settings);
    if (tune->parsed()) return run_tune(settings);
    if (analyze_cmd->parsed()) return run_analyze(settings);
    if (export_cmd->parsed()) return run_export(settings);
  } catch (const DegenerateData& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
