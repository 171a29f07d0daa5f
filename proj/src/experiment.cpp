#include "matgraph/experiment.hpp"

#include "matgraph/error.hpp"
#include "matgraph/parallel.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace matgraph {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::GlobalSize: return "global_size";
    case ExperimentKind::GlobalPower: return "global_power";
    case ExperimentKind::Fdr: return "fdr";
  }
  return "unknown";
}

std::string to_string(Method method) {
  switch (method) {
    case Method::Oracle: return "oracle";
    case Method::DataDriven: return "data_driven";
    case Method::VectorNormal: return "vector_normal";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "global_size") return ExperimentKind::GlobalSize;
  if (name == "global_power") return ExperimentKind::GlobalPower;
  if (name == "fdr") return ExperimentKind::Fdr;
  throw InvalidParameter("unknown experiment '" + name + "'");
}

Method parse_method(const std::string& name) {
  if (name == "oracle") return Method::Oracle;
  if (name == "data_driven") return Method::DataDriven;
  if (name == "vector_normal") return Method::VectorNormal;
  throw InvalidParameter("unknown method '" + name + "'");
}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  if (kind == ExperimentKind::Fdr) {
    cfg.n = 20;
    cfg.q = 20;
    cfg.alphas = {0.1};
    cfg.replications = 100;
    cfg.lambda = LambdaPolicy::tuned();
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_key_values(const KeyValues& kv) {
  const auto exp = kv.find("experiment");
  ExperimentConfig cfg =
      defaults(exp != kv.end() ? parse_experiment_kind(exp->second) : ExperimentKind::GlobalSize);
  for (const auto& [key, value] : kv) {
    if (key == "experiment") continue;
    if (key == "p") {
      cfg.p = parse_count(key, value);
    } else if (key == "n") {
      cfg.n = parse_count(key, value);
    } else if (key == "q") {
      cfg.q = parse_count(key, value);
    } else if (key == "model") {
      cfg.model = parse_model_kind(value);
    } else if (key == "alpha") {
      cfg.alphas.clear();
      for (const auto& a : split_list(value)) cfg.alphas.push_back(parse_double(key, a));
    } else if (key == "replications") {
      cfg.replications = parse_count(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_count(key, value);
    } else if (key == "methods") {
      cfg.methods.clear();
      for (const auto& m : split_list(value)) cfg.methods.push_back(parse_method(m));
    } else if (key == "lambda") {
      if (value == "tuned") {
        cfg.lambda.kind = LambdaPolicy::Kind::Tuned;
      } else if (value == "kappa") {
        cfg.lambda.kind = LambdaPolicy::Kind::Kappa;
      } else {
        throw InvalidParameter("'lambda' must be 'tuned' or 'kappa', got '" + value + "'");
      }
    } else if (key == "kappa") {
      cfg.lambda.kappa = parse_double(key, value);
    } else if (key == "rho") {
      cfg.temporal_rho = parse_double(key, value);
    } else if (key == "threads") {
      cfg.threads = parse_count(key, value);
    } else {
      throw InvalidParameter("unknown config key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  if (replications < 1) throw InvalidParameter("replications must be at least 1");
  if (alphas.empty()) throw InvalidParameter("at least one alpha level is required");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidParameter("alpha levels must lie in (0, 1)");
  }
  if (methods.empty()) throw InvalidParameter("at least one method is required");
  if (n < 2) throw InvalidParameter("n must be at least 2");
  if (q < 1) throw InvalidParameter("q must be at least 1");
  if (p < 3) throw InvalidParameter("p must be at least 3");
  if (kind == ExperimentKind::GlobalPower && p < 8) {
    throw InvalidParameter("global_power needs p >= 8");
  }
  if (kind == ExperimentKind::Fdr) {
    if (p < 4) throw InvalidParameter("fdr experiments need p >= 4");
    if (model == ModelKind::Model2 && p % 10 != 0) {
      throw InvalidParameter("Model2 needs p divisible by 10");
    }
  }
  if (!(std::abs(temporal_rho) < 1.0)) throw InvalidParameter("rho must satisfy |rho| < 1");
  if (lambda.kind == LambdaPolicy::Kind::Kappa && !(lambda.kappa > 0.0)) {
    throw InvalidParameter("kappa must be positive");
  }
}

const MethodSummary& ExperimentReport::summary(Method method, double alpha) const {
  for (const auto& s : summaries) {
    if (s.method == method && s.alpha == alpha) return s;
  }
  throw InvalidParameter("report has no summary for " + to_string(method));
}

std::vector<ReplicationOutcome> ExperimentReport::outcomes_for(Method method, double alpha) const {
  std::vector<ReplicationOutcome> out;
  for (const auto& o : outcomes) {
    if (o.method == method && o.alpha == alpha) out.push_back(o);
  }
  return out;
}

double binomial_se(double rate, std::size_t reps) {
  return std::sqrt(std::max(0.0, rate * (1.0 - rate)) / static_cast<double>(reps));
}

PairStatistics vector_normal_baseline(const SpatioTemporalSample& x, const LambdaPolicy& policy) {
  return compute_statistics(no_whitening(x), policy).stats;
}

namespace {

WhitenedData whiten_for(Method method, const SpatioTemporalSample& x, const SymMatrix& sigma_T) {
  switch (method) {
    case Method::Oracle: return whiten_oracle(x, sigma_T);
    case Method::DataDriven: return whiten_data_driven(x);
    case Method::VectorNormal: return no_whitening(x);
  }
  throw InvalidParameter("unknown method");
}

void summarize(ExperimentReport& report) {
  const auto& cfg = report.config;
  const double reps = static_cast<double>(cfg.replications);
  for (Method m : cfg.methods) {
    for (double a : cfg.alphas) {
      MethodSummary s;
      s.method = m;
      s.alpha = a;
      double rate = 0.0;
      double power = 0.0;
      for (const auto& o : report.outcomes) {
        if (o.method != m || o.alpha != a) continue;
        if (cfg.kind == ExperimentKind::Fdr) {
          rate += o.fdp;
          power += o.tpp;
        } else {
          rate += o.reject ? 1.0 : 0.0;
        }
      }
      s.rate = rate / reps;
      s.rate_se = binomial_se(s.rate, cfg.replications);
      if (cfg.kind == ExperimentKind::Fdr) {
        s.power = power / reps;
        s.power_se = binomial_se(s.power, cfg.replications);
      } else if (cfg.kind == ExperimentKind::GlobalPower) {
        s.power = s.rate;
        s.power_se = s.rate_se;
      }
      report.summaries.push_back(s);
    }
  }
}

template <typename PerReplication>
ExperimentReport run_replications(const ExperimentConfig& cfg, PerReplication&& body) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::vector<ReplicationOutcome>> per_rep(cfg.replications);
  const SymMatrix sigma_T = ar1_covariance(cfg.q, cfg.temporal_rho);
  const Rng root(cfg.seed);
  parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    Rng rng = root.substream(r);
    per_rep[r] = body(r, rng, sigma_T);
  });
  ExperimentReport report;
  report.config = cfg;
  for (auto& outcomes : per_rep) {
    for (auto& o : outcomes) report.outcomes.push_back(o);
  }
  summarize(report);
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

ExperimentReport run_global_experiment(const ExperimentConfig& cfg) {
  if (cfg.kind == ExperimentKind::Fdr) throw InvalidParameter("run_global_experiment: kind is fdr");
  return run_replications(cfg, [&](std::size_t r, Rng& rng, const SymMatrix& sigma_T) {
    const SymMatrix omega_L = cfg.kind == ExperimentKind::GlobalPower
                                  ? build_global_alternative(cfg.p, cfg.n, cfg.q, rng)
                                  : null_spatial(cfg.p);
    const KroneckerModel model = KroneckerModel::from_spatial_precision(omega_L, sigma_T);
    const SpatioTemporalSample x = sample_matrix_normal(model, cfg.n, rng);
    std::vector<ReplicationOutcome> out;
    for (Method m : cfg.methods) {
      const StatisticsRun run = compute_statistics(whiten_for(m, x, sigma_T), cfg.lambda);
      for (double a : cfg.alphas) {
        const GlobalTestResult g = global_test(run.stats, a);
        ReplicationOutcome o;
        o.replication = r;
        o.method = m;
        o.alpha = a;
        o.m_stat = g.m_stat;
        o.centered_stat = centered_max_statistic(g.m_stat, cfg.p);
        o.reject = g.reject;
        o.p_value = g.p_value;
        o.b_hat = run.b_hat;
        out.push_back(o);
      }
    }
    return out;
  });
}

ExperimentReport run_fdr_experiment(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::Fdr) throw InvalidParameter("run_fdr_experiment: kind is not fdr");
  return run_replications(cfg, [&](std::size_t r, Rng& rng, const SymMatrix& sigma_T) {
    const SymMatrix omega_L = build_model(cfg.model, cfg.p, rng);
    const KroneckerModel model = KroneckerModel::from_spatial_precision(omega_L, sigma_T);
    const SpatioTemporalSample x = sample_matrix_normal(model, cfg.n, rng);
    std::size_t true_edges = 0;
    for (std::size_t i = 0; i < cfg.p; ++i) {
      for (std::size_t j = i + 1; j < cfg.p; ++j) true_edges += omega_L(i, j) != 0.0 ? 1 : 0;
    }
    std::vector<ReplicationOutcome> out;
    for (Method m : cfg.methods) {
      const StatisticsRun run = compute_statistics(whiten_for(m, x, sigma_T), cfg.lambda);
      for (double a : cfg.alphas) {
        const FdrResult f = fdr_threshold(run.stats, a);
        ReplicationOutcome o;
        o.replication = r;
        o.method = m;
        o.alpha = a;
        o.t_hat = f.t_hat;
        o.b_hat = run.b_hat;
        o.true_edges = true_edges;
        o.rejections = f.rejected.size();
        for (const auto& e : f.rejected) {
          if (omega_L(e.i, e.j) != 0.0) {
            ++o.true_discoveries;
          } else {
            ++o.false_discoveries;
          }
        }
        o.fdp = static_cast<double>(o.false_discoveries) /
                static_cast<double>(std::max<std::size_t>(o.rejections, 1));
        o.tpp = true_edges > 0 ? static_cast<double>(o.true_discoveries) / static_cast<double>(true_edges)
                               : 0.0;
        out.push_back(o);
      }
    }
    return out;
  });
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  return cfg.kind == ExperimentKind::Fdr ? run_fdr_experiment(cfg) : run_global_experiment(cfg);
}

bool power_dominates_size(const ExperimentReport& size, const ExperimentReport& power) {
  for (const auto& s : size.summaries) {
    for (const auto& w : power.summaries) {
      if (s.method == w.method && s.alpha == w.alpha && w.rate < s.rate) return false;
    }
  }
  return true;
}

std::string report_json(const ExperimentReport& report) {
  using nlohmann::json;
  const auto& cfg = report.config;
  json methods = json::array();
  for (Method m : cfg.methods) methods.push_back(to_string(m));
  json config = {
      {"experiment", to_string(cfg.kind)},
      {"p", cfg.p},
      {"n", cfg.n},
      {"q", cfg.q},
      {"alpha", cfg.alphas},
      {"replications", cfg.replications},
      {"seed", cfg.seed},
      {"methods", methods},
      {"lambda", cfg.lambda.kind == LambdaPolicy::Kind::Tuned ? "tuned" : "kappa"},
      {"kappa", cfg.lambda.kappa},
      {"rho", cfg.temporal_rho},
  };
  if (cfg.kind == ExperimentKind::Fdr) config["model"] = to_string(cfg.model);

  json results = json::array();
  for (const auto& s : report.summaries) {
    json row = {{"method", to_string(s.method)}, {"alpha", s.alpha}};
    if (cfg.kind == ExperimentKind::Fdr) {
      row["fdr"] = s.rate;
      row["fdr_se"] = s.rate_se;
      row["power"] = s.power;
      row["power_se"] = s.power_se;
    } else {
      row[cfg.kind == ExperimentKind::GlobalSize ? "size" : "power"] = s.rate;
      row["se"] = s.rate_se;
    }
    results.push_back(row);
  }
  json doc = {
      {"schema_version", 1},
      {"kind", "experiment_report"},
      {"config", config},
      {"seed", cfg.seed},
      {"wall_clock_seconds", report.wall_clock_seconds},
      {"results", results},
  };
  return doc.dump(2) + "\n";
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os.precision(17);
  if (report.config.kind == ExperimentKind::Fdr) {
    os << "replication,method,alpha,rejections,false_discoveries,true_discoveries,true_edges,fdp,tpp,"
          "t_hat,b_hat\n";
    for (const auto& o : report.outcomes) {
      os << o.replication << ',' << to_string(o.method) << ',' << o.alpha << ',' << o.rejections << ','
         << o.false_discoveries << ',' << o.true_discoveries << ',' << o.true_edges << ',' << o.fdp
         << ',' << o.tpp << ',' << o.t_hat << ',' << o.b_hat << '\n';
    }
  } else {
    os << "replication,method,alpha,m_stat,centered_stat,reject,p_value\n";
    for (const auto& o : report.outcomes) {
      os << o.replication << ',' << to_string(o.method) << ',' << o.alpha << ',' << o.m_stat << ','
         << o.centered_stat << ',' << (o.reject ? 1 : 0) << ',' << o.p_value << '\n';
    }
  }
  return os.str();
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidInput("cannot create output directory " + dir.string());
  write_file_atomic(dir / "report.json", report_json(report));
  write_file_atomic(dir / "replications.csv", report_csv(report));
}

}  // namespace matgraph
