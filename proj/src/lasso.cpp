#include "matgraph/lasso.hpp"

#include "matgraph/error.hpp"

#include <algorithm>
#include <cmath>

namespace matgraph {

namespace {

double soft_threshold(double z, double lambda) {
  if (z > lambda) return z - lambda;
  if (z < -lambda) return z + lambda;
  return 0.0;
}

}  // namespace

double lasso_gram_objective(const Matrix& gram, const Vector& corr, double lambda, const Vector& u) {
  return 0.5 * u.dot(gram * u) - corr.dot(u) + lambda * u.lpNorm<1>();
}

double lasso_kkt_gap(const Matrix& gram, const Vector& corr, double lambda, const Vector& u) {
  const Vector grad = corr - gram * u;
  double gap = 0.0;
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    double v;
    if (u(j) == 0.0) {
      v = std::max(0.0, std::abs(grad(j)) - lambda);
    } else {
      v = std::abs(grad(j) - (u(j) > 0 ? lambda : -lambda));
    }
    gap = std::max(gap, v);
  }
  return gap;
}

LassoSolution lasso_fit_gram(const Matrix& gram, const Vector& corr, double lambda,
                             const LassoOptions& options, const Vector* warm) {
  const Eigen::Index d = corr.size();
  if (gram.rows() != d || gram.cols() != d) {
    throw DimensionMismatch("lasso_fit_gram: gram and corr sizes differ");
  }
  if (!(lambda >= 0.0)) throw InvalidParameter("lasso: lambda must be nonnegative");
  if (!(options.tol > 0.0)) throw InvalidParameter("lasso: tol must be positive");

  LassoSolution sol;
  Vector u = Vector::Zero(d);
  if (warm != nullptr) {
    if (warm->size() != d) throw DimensionMismatch("lasso_fit_gram: warm start has wrong size");
    u = *warm;
  }
  // residual correlation: c - G u
  Vector grad = corr - gram * u;

  for (std::size_t sweep = 0; sweep < options.max_iter; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      const double gjj = gram(j, j);
      if (gjj <= 0.0) {
        // Constant column; the penalty keeps it at zero.
        if (u(j) != 0.0) {
          grad += gram.col(j) * u(j);
          max_change = std::max(max_change, std::abs(u(j)));
          u(j) = 0.0;
        }
        continue;
      }
      const double old = u(j);
      const double updated = soft_threshold(grad(j) + gjj * old, lambda) / gjj;
      const double delta = updated - old;
      if (delta != 0.0) {
        grad -= gram.col(j) * delta;
        u(j) = updated;
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    sol.iterations = sweep + 1;
    if (options.record_objective) {
      sol.objective_trace.push_back(lasso_gram_objective(gram, corr, lambda, u));
    }
    if (max_change < options.tol) {
      sol.converged = true;
      break;
    }
  }
  sol.kkt_gap = lasso_kkt_gap(gram, corr, lambda, u);
  sol.coefficients = std::move(u);
  return sol;
}

LassoSolution lasso_fit(const LassoProblem& problem, const LassoOptions& options) {
  const Eigen::Index m = problem.design.rows();
  const Eigen::Index d = problem.design.cols();
  if (m < 1) throw InvalidParameter("lasso_fit: design needs at least one row");
  if (problem.response.size() != m) throw DimensionMismatch("lasso_fit: response length != rows");
  if (problem.scale.size() != d) throw DimensionMismatch("lasso_fit: scale length != columns");
  if ((problem.scale.array() <= 0.0).any()) {
    throw InvalidParameter("lasso_fit: scale entries must be positive");
  }
  const Matrix scaled = problem.design * problem.scale.cwiseInverse().asDiagonal();
  const double inv_m = 1.0 / static_cast<double>(m);
  const Matrix gram = inv_m * (scaled.transpose() * scaled);
  const Vector corr = inv_m * (scaled.transpose() * problem.response);
  LassoSolution sol = lasso_fit_gram(gram, corr, problem.lambda, options);
  sol.coefficients = sol.coefficients.cwiseQuotient(problem.scale);
  return sol;
}

double default_lambda(double sigma_ii, double p, double nq, double kappa) {
  if (!(sigma_ii > 0 && p > 0 && nq > 0 && kappa > 0)) {
    throw InvalidParameter("default_lambda: all arguments must be positive");
  }
  return kappa * std::sqrt(sigma_ii * std::log(p) / nq);
}

}  // namespace matgraph
