#include "matgraph/statistics.hpp"

#include "matgraph/error.hpp"
#include "matgraph/normal.hpp"

#include <cmath>
#include <sstream>

namespace matgraph {

std::string to_string(WhiteningMode mode) {
  switch (mode) {
    case WhiteningMode::Oracle: return "oracle";
    case WhiteningMode::DataDriven: return "data_driven";
    case WhiteningMode::None: return "vector_normal";
  }
  return "unknown";
}

namespace {

WhitenedData transform(const SpatioTemporalSample& x, const Matrix* right, WhiteningMode mode) {
  WhitenedData w;
  w.mode = mode;
  w.n = x.n();
  w.p = x.p();
  w.q = x.q();
  w.y.reserve(w.n);
  const auto p = static_cast<Eigen::Index>(w.p);
  const auto q = static_cast<Eigen::Index>(w.q);
  w.stacked.resize(static_cast<Eigen::Index>(w.n) * q, p);
  for (std::size_t k = 0; k < w.n; ++k) {
    Matrix yk = right != nullptr ? Matrix(x.subject(k) * *right) : x.subject(k);
    w.stacked.middleRows(static_cast<Eigen::Index>(k) * q, q) = yk.transpose();
    w.y.push_back(std::move(yk));
  }
  return w;
}

}  // namespace

SymMatrix temporal_covariance(const SpatioTemporalSample& x) {
  const auto q = static_cast<Eigen::Index>(x.q());
  Matrix acc = Matrix::Zero(q, q);
  for (const Matrix& xk : x.subjects()) acc.noalias() += xk.transpose() * xk;
  acc /= static_cast<double>(x.n() * x.p());
  return SymMatrix::symmetrized(acc);
}

WhitenedData whiten_oracle(const SpatioTemporalSample& x, const SymMatrix& sigma_T) {
  if (sigma_T.dim() != x.q()) {
    std::ostringstream os;
    os << "whiten_oracle: sigma_T is " << sigma_T.dim() << "x" << sigma_T.dim() << " but q = " << x.q();
    throw DimensionMismatch(os.str());
  }
  const EigenDecomp e = sym_eigendecomp(sigma_T);
  if (!(e.values(e.values.size() - 1) > 0.0)) {
    throw InvalidInput("whiten_oracle: sigma_T is not positive definite");
  }
  InvSqrtResult s = inv_sqrt(sigma_T);
  WhitenedData w = transform(x, &s.matrix.matrix(), WhiteningMode::Oracle);
  w.warnings = std::move(s.warnings);
  return w;
}

WhitenedData whiten_data_driven(const SpatioTemporalSample& x) {
  InvSqrtResult s = inv_sqrt(temporal_covariance(x));
  WhitenedData w = transform(x, &s.matrix.matrix(), WhiteningMode::DataDriven);
  w.warnings = std::move(s.warnings);
  return w;
}

WhitenedData no_whitening(const SpatioTemporalSample& x) {
  return transform(x, nullptr, WhiteningMode::None);
}

double NodeRegressions::coefficient(std::size_t i, std::size_t j) const {
  if (i == j) throw InvalidParameter("coefficient: i == j");
  const std::size_t pos = j < i ? j : j - 1;
  return beta_hat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(pos));
}

NodeSolver::NodeSolver(const WhitenedData& w, LassoOptions options)
    : n_(w.n), p_(w.p), q_(w.q), options_(options) {
  const auto p = static_cast<Eigen::Index>(p_);
  const auto q = static_cast<Eigen::Index>(q_);
  const double nq = static_cast<double>(n_ * q_);

  // Stacked grand-mean centering for the lasso design.
  const Eigen::RowVectorXd grand = w.stacked.colwise().mean();
  const Matrix z = w.stacked.rowwise() - grand;
  const Matrix cov = (z.transpose() * z) / nq;
  sigma_diag_ = cov.diagonal();
  for (Eigen::Index i = 0; i < p; ++i) {
    if (!(sigma_diag_(i) > 0.0)) {
      std::ostringstream os;
      os << "node " << i << " has zero sample variance";
      throw DegenerateData(os.str(), static_cast<std::size_t>(i));
    }
  }

  // Per-time-point centering for residuals.
  centered_ = w.stacked;
  for (Eigen::Index l = 0; l < q; ++l) {
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(p);
    for (std::size_t k = 0; k < n_; ++k) mean += w.stacked.row(static_cast<Eigen::Index>(k) * q + l);
    mean /= static_cast<double>(n_);
    for (std::size_t k = 0; k < n_; ++k) centered_.row(static_cast<Eigen::Index>(k) * q + l) -= mean;
  }

  const Vector sd = sigma_diag_.cwiseSqrt();
  gram_.resize(p_);
  corr_.resize(p_);
  scale_.resize(p_);
  for (Eigen::Index i = 0; i < p; ++i) {
    std::vector<Eigen::Index> others;
    others.reserve(p_ - 1);
    for (Eigen::Index j = 0; j < p; ++j) {
      if (j != i) others.push_back(j);
    }
    const auto d = static_cast<Eigen::Index>(others.size());
    Matrix g(d, d);
    Vector c(d);
    Vector s(d);
    for (Eigen::Index a = 0; a < d; ++a) {
      const Eigen::Index ja = others[static_cast<std::size_t>(a)];
      s(a) = sd(ja);
      c(a) = cov(ja, i) / sd(ja);
      for (Eigen::Index b = 0; b < d; ++b) {
        const Eigen::Index jb = others[static_cast<std::size_t>(b)];
        g(a, b) = cov(ja, jb) / (sd(ja) * sd(jb));
      }
    }
    gram_[static_cast<std::size_t>(i)] = std::move(g);
    corr_[static_cast<std::size_t>(i)] = std::move(c);
    scale_[static_cast<std::size_t>(i)] = std::move(s);
  }
}

NodeRegressions NodeSolver::fit(const Vector& lambdas, Matrix* warm) const {
  const auto p = static_cast<Eigen::Index>(p_);
  if (lambdas.size() != p) throw DimensionMismatch("fit_nodes: need one lambda per node");
  if ((lambdas.array() < 0.0).any()) throw InvalidParameter("fit_nodes: lambdas must be nonnegative");
  if (warm != nullptr && (warm->rows() != p || warm->cols() != p - 1)) {
    throw DimensionMismatch("fit_nodes: warm start must be p x (p-1)");
  }

  NodeRegressions reg;
  reg.n = n_;
  reg.q = q_;
  reg.lambda_used = lambdas;
  reg.beta_hat.resize(p, p - 1);
  Matrix full = Matrix::Zero(p, p);  // column i: coefficients of node i's regression

  for (Eigen::Index i = 0; i < p; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    Vector start;
    if (warm != nullptr) start = warm->row(i).transpose();
    LassoSolution sol = lasso_fit_gram(gram_[idx], corr_[idx], lambdas(i), options_,
                                       warm != nullptr ? &start : nullptr);
    if (!sol.converged) reg.unconverged.push_back(idx);
    if (warm != nullptr) warm->row(i) = sol.coefficients.transpose();
    const Vector beta = sol.coefficients.cwiseQuotient(scale_[idx]);
    reg.beta_hat.row(i) = beta.transpose();
    for (Eigen::Index a = 0; a < p - 1; ++a) full(a < i ? a : a + 1, i) = beta(a);
  }
  reg.residuals = centered_ - centered_ * full;
  return reg;
}

NodeRegressions fit_nodes(const WhitenedData& w, const Vector& lambdas, const LassoOptions& options) {
  return NodeSolver(w, options).fit(lambdas);
}

PairStatistics pair_statistics(const NodeRegressions& reg) {
  const auto p = static_cast<Eigen::Index>(reg.p());
  const double nq = static_cast<double>(reg.nq());
  PairStatistics s;
  s.nq = reg.nq();
  s.r_tilde = (reg.residuals.transpose() * reg.residuals) / nq;
  s.r_tilde_diag = s.r_tilde.diagonal();
  for (Eigen::Index i = 0; i < p; ++i) {
    if (!(s.r_tilde_diag(i) > 0.0)) {
      std::ostringstream os;
      os << "node " << i << " has nonpositive residual variance " << s.r_tilde_diag(i);
      throw DegenerateData(os.str(), static_cast<std::size_t>(i));
    }
  }
  s.r_hat = Matrix::Zero(p, p);
  s.t_stat = Matrix::Zero(p, p);
  s.theta_hat = Matrix::Zero(p, p);
  s.w_stat = Matrix::Zero(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double rii = s.r_tilde_diag(i);
    for (Eigen::Index j = i + 1; j < p; ++j) {
      const double rjj = s.r_tilde_diag(j);
      const double b_ij = reg.coefficient(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      const double b_ji = reg.coefficient(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
      const double r = -(s.r_tilde(i, j) + rii * b_ij + rjj * b_ji);
      const double t = r / (rii * rjj);
      const double theta = (1.0 + b_ij * b_ij * rii / rjj) / (nq * rii * rjj);
      s.r_hat(i, j) = r;
      s.t_stat(i, j) = t;
      s.theta_hat(i, j) = theta;
      s.w_stat(i, j) = t / std::sqrt(theta);
    }
  }
  return s;
}

Vector default_lambdas(const NodeSolver& solver, std::size_t nq, double kappa) {
  const Vector& sd = solver.sigma_L_diag();
  Vector out(sd.size());
  for (Eigen::Index i = 0; i < sd.size(); ++i) {
    out(i) = default_lambda(sd(i), static_cast<double>(solver.p()), static_cast<double>(nq), kappa);
  }
  return out;
}

double tuning_objective(const PairStatistics& stats) {
  const auto p = static_cast<Eigen::Index>(stats.p());
  const double pd = static_cast<double>(p);
  const double tail = normal_sf(std::sqrt(std::log(pd)));
  std::vector<double> abs_w;
  abs_w.reserve(static_cast<std::size_t>(p * (p - 1) / 2));
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i + 1; j < p; ++j) abs_w.push_back(std::abs(stats.w_stat(i, j)));
  }
  double total = 0.0;
  for (int s = 1; s <= kTuningLevels; ++s) {
    const double level = s * tail / kTuningLevels;
    const double threshold = normal_isf(level);
    std::size_t count = 0;
    for (double a : abs_w) count += a >= threshold ? 1 : 0;
    const double ratio = static_cast<double>(count) / (level * pd * (pd - 1.0)) - 1.0;
    total += ratio * ratio;
  }
  return total;
}

TuningResult tune_lambda(const WhitenedData& w, const LassoOptions& options) {
  return tune_lambda(NodeSolver(w, options), w.nq());
}

TuningResult tune_lambda(const NodeSolver& solver, std::size_t nq) {
  if (solver.p() < 3) throw InvalidParameter("tune_lambda: p must be at least 3");
  const Vector base = default_lambdas(solver, nq, 1.0);  // sqrt(sigma_ii log p / nq)
  const auto p = static_cast<Eigen::Index>(solver.p());

  TuningResult result;
  Matrix warm = Matrix::Zero(p, p - 1);
  // Descending penalty so each fit warm-starts from a sparser neighbour.
  for (int b = kTuningGridSize; b >= 1; --b) {
    const Vector lambdas = base * (b / 20.0);
    const NodeRegressions reg = solver.fit(lambdas, &warm);
    result.objective[static_cast<std::size_t>(b - 1)] = tuning_objective(pair_statistics(reg));
  }
  int best = 1;
  for (int b = 2; b <= kTuningGridSize; ++b) {
    if (result.objective[static_cast<std::size_t>(b - 1)] <
        result.objective[static_cast<std::size_t>(best - 1)]) {
      best = b;
    }
  }
  result.b_hat = best;
  result.lambdas = base * (best / 20.0);
  return result;
}

StatisticsRun compute_statistics(const WhitenedData& w, const LambdaPolicy& policy,
                                 const LassoOptions& options) {
  StatisticsRun run;
  const NodeSolver solver(w, options);
  if (policy.kind == LambdaPolicy::Kind::Tuned) {
    TuningResult tuned = tune_lambda(solver, w.nq());
    run.lambdas = tuned.lambdas;
    run.b_hat = tuned.b_hat;
  } else {
    if (!(policy.kappa > 0.0)) throw InvalidParameter("lambda policy: kappa must be positive");
    run.lambdas = default_lambdas(solver, w.nq(), policy.kappa);
  }
  NodeRegressions reg = solver.fit(run.lambdas);
  run.unconverged = reg.unconverged;
  run.stats = pair_statistics(reg);
  return run;
}

}  // namespace matgraph
