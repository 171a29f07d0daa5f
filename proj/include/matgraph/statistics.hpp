#pragma once

#include "matgraph/lasso.hpp"
#include "matgraph/linalg.hpp"
#include "matgraph/simulate.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace matgraph {

enum class WhiteningMode {
  Oracle,      // known temporal covariance
  DataDriven,  // plug-in (1/np) sum X_k^T X_k
  None,        // raw columns treated as independent p-vectors (vector-normal baseline)
};

std::string to_string(WhiteningMode mode);

/// Transformed subjects Y_k = X_k S plus the (nq) x p stacked view whose row
/// k*q + l is the spatial vector of subject k at time l.
struct WhitenedData {
  std::vector<Matrix> y;
  Matrix stacked;
  WhiteningMode mode = WhiteningMode::Oracle;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t q = 0;
  std::vector<std::string> warnings;

  std::size_t nq() const { return n * q; }
};

/// (1/np) sum_k X_k^T X_k
SymMatrix temporal_covariance(const SpatioTemporalSample& x);

WhitenedData whiten_oracle(const SpatioTemporalSample& x, const SymMatrix& sigma_T);
WhitenedData whiten_data_driven(const SpatioTemporalSample& x);
WhitenedData no_whitening(const SpatioTemporalSample& x);

/// Node-wise lasso fits. Row i of beta_hat holds the p-1 coefficients of
/// node i on the other nodes in their natural order (node i skipped).
struct NodeRegressions {
  Matrix beta_hat;        // p x (p-1)
  Matrix residuals;       // (nq) x p, row k*q + l
  Vector lambda_used;     // p
  std::vector<std::size_t> unconverged;  // nodes whose solver hit max_iter
  std::size_t n = 0;
  std::size_t q = 0;

  std::size_t p() const { return static_cast<std::size_t>(beta_hat.rows()); }
  std::size_t nq() const { return n * q; }

  /// Coefficient of predictor j inside the regression of node i (i != j).
  double coefficient(std::size_t i, std::size_t j) const;

  double residual(std::size_t k, std::size_t i, std::size_t l) const {
    return residuals(static_cast<Eigen::Index>(k * q + l), static_cast<Eigen::Index>(i));
  }
};

/// Upper-triangular pair arrays (entries with i < j; the rest are zero).
struct PairStatistics {
  Matrix r_tilde;        // full residual covariance
  Vector r_tilde_diag;
  Matrix r_hat;
  Matrix t_stat;
  Matrix theta_hat;
  Matrix w_stat;
  std::size_t nq = 0;

  std::size_t p() const { return static_cast<std::size_t>(w_stat.rows()); }
  double w(std::size_t i, std::size_t j) const {
    return w_stat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
};

/// Precomputed per-node covariance-form problems for one whitened dataset.
/// Fitting several lambda vectors (tuning) reuses the same Gram matrices.
class NodeSolver {
 public:
  explicit NodeSolver(const WhitenedData& w, LassoOptions options = {});

  std::size_t p() const { return p_; }

  /// Diagonal of the stacked sample covariance (grand-mean centered, 1/nq).
  const Vector& sigma_L_diag() const { return sigma_diag_; }

  /// Solve all node problems. `warm` (p x (p-1), scaled coordinates) is
  /// updated in place when given.
  NodeRegressions fit(const Vector& lambdas, Matrix* warm = nullptr) const;

 private:
  std::size_t n_, p_, q_;
  LassoOptions options_;
  Matrix centered_;    // per-time-point centered stacked rows
  Vector sigma_diag_;
  std::vector<Matrix> gram_;  // per node, (p-1) x (p-1), scaled
  std::vector<Vector> corr_;  // per node, p-1, scaled
  std::vector<Vector> scale_; // per node, sqrt of sigma diagonal without i
};

NodeRegressions fit_nodes(const WhitenedData& w, const Vector& lambdas,
                          const LassoOptions& options = {});

/// Throws DegenerateData naming the first node with nonpositive residual variance.
PairStatistics pair_statistics(const NodeRegressions& reg);

/// lambda_i = kappa * sqrt(sigma_ii log p / nq)
Vector default_lambdas(const NodeSolver& solver, std::size_t nq, double kappa);

inline constexpr int kTuningGridSize = 40;
inline constexpr int kTuningLevels = 10;

struct TuningResult {
  Vector lambdas;
  int b_hat = 0;                              // 1..40
  std::array<double, kTuningGridSize> objective{};  // index b - 1
};

/// Sum over s = 1..10 of (tail count at level s / nominal - 1)^2 for one W array.
double tuning_objective(const PairStatistics& stats);

/// Data-adaptive lambda grid search over b = 1..40; ties go to the smaller b.
TuningResult tune_lambda(const WhitenedData& w, const LassoOptions& options = {});
TuningResult tune_lambda(const NodeSolver& solver, std::size_t nq);

struct LambdaPolicy {
  enum class Kind { Kappa, Tuned };
  Kind kind = Kind::Kappa;
  double kappa = 2.0;

  static LambdaPolicy fixed(double kappa) { return {Kind::Kappa, kappa}; }
  static LambdaPolicy tuned() { return {Kind::Tuned, 2.0}; }
};

struct StatisticsRun {
  PairStatistics stats;
  Vector lambdas;
  int b_hat = 0;  // 0 unless tuned
  std::vector<std::size_t> unconverged;
};

/// Node fits plus pair statistics under a lambda policy.
StatisticsRun compute_statistics(const WhitenedData& w, const LambdaPolicy& policy,
                                 const LassoOptions& options = {});

}  // namespace matgraph
