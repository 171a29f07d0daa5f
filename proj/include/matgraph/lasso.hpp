#pragma once

#include "matgraph/linalg.hpp"

#include <cstddef>
#include <vector>

namespace matgraph {

/// min_u (1/2m) |A diag(scale)^{-1} u - y|^2 + lambda |u|_1, reported as
/// beta = diag(scale)^{-1} u. Design and response are centered by the caller.
struct LassoProblem {
  Matrix design;    // m x d
  Vector response;  // m
  double lambda = 0.0;
  Vector scale;     // d, positive
};

struct LassoOptions {
  double tol = 1e-7;             // max coefficient change per sweep
  std::size_t max_iter = 100000; // sweeps
  bool record_objective = false;
};

struct LassoSolution {
  Vector coefficients;  // original (unscaled) parametrization
  std::size_t iterations = 0;
  double kkt_gap = 0.0;
  bool converged = false;
  std::vector<double> objective_trace;  // after each sweep, when recorded
};

LassoSolution lasso_fit(const LassoProblem& problem, const LassoOptions& options = {});

/// Covariance form of the same problem in scaled coordinates:
///   min_u  1/2 u^T G u - c^T u + lambda |u|_1
/// with G = (1/m) A_s^T A_s and c = (1/m) A_s^T y. `warm` seeds the iterate.
/// Coefficients are returned in scaled coordinates (u, not beta).
LassoSolution lasso_fit_gram(const Matrix& gram, const Vector& corr, double lambda,
                             const LassoOptions& options = {}, const Vector* warm = nullptr);

/// Objective of the covariance form, without the constant |y|^2 / 2m.
double lasso_gram_objective(const Matrix& gram, const Vector& corr, double lambda, const Vector& u);

/// Largest stationarity violation of u for the covariance form.
double lasso_kkt_gap(const Matrix& gram, const Vector& corr, double lambda, const Vector& u);

/// kappa * sqrt(sigma_ii * log p / nq)
double default_lambda(double sigma_ii, double p, double nq, double kappa);

}  // namespace matgraph
