#include "matgraph/error.hpp"
#include "matgraph/lasso.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

using namespace matgraph;
using matgraph::testing::random_matrix;

namespace {

Matrix centered(Matrix a) {
  const Eigen::RowVectorXd mean = a.colwise().mean();
  a.rowwise() -= mean;
  return a;
}

LassoProblem random_problem(Rng& rng, Eigen::Index m, Eigen::Index d, double lambda) {
  LassoProblem pr;
  pr.design = centered(random_matrix(m, d, rng));
  // Correlated columns make the problem less trivial.
  for (Eigen::Index j = 1; j < d; ++j) pr.design.col(j) += 0.5 * pr.design.col(j - 1);
  Vector truth = Vector::Zero(d);
  for (Eigen::Index j = 0; j < std::min<Eigen::Index>(d, 4); ++j) truth(j) = (j % 2 ? -1.0 : 1.0);
  Vector noise(m);
  for (Eigen::Index i = 0; i < m; ++i) noise(i) = rng.normal();
  pr.response = pr.design * truth + noise;
  pr.response.array() -= pr.response.mean();
  pr.lambda = lambda;
  pr.scale = Vector(d);
  for (Eigen::Index j = 0; j < d; ++j) pr.scale(j) = 0.5 + rng.uniform();
  return pr;
}

// Stationarity computed from the raw design, independent of the Gram path.
double kkt_violation(const LassoProblem& pr, const Vector& beta) {
  const double m = static_cast<double>(pr.design.rows());
  const Matrix scaled = pr.design * pr.scale.cwiseInverse().asDiagonal();
  const Vector u = beta.cwiseProduct(pr.scale);
  const Vector grad = scaled.transpose() * (pr.response - scaled * u) / m;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    if (u(j) == 0.0) {
      worst = std::max(worst, std::abs(grad(j)) - pr.lambda);
    } else {
      worst = std::max(worst, std::abs(grad(j) - std::copysign(pr.lambda, u(j))));
    }
  }
  return worst;
}

double objective(const LassoProblem& pr, const Vector& beta) {
  const double m = static_cast<double>(pr.design.rows());
  const Vector r = pr.response - pr.design * beta;
  return r.squaredNorm() / (2 * m) + pr.lambda * beta.cwiseProduct(pr.scale).lpNorm<1>();
}

}  // namespace

TEST(Lasso, FullShrinkage) {
  Rng rng(1);
  LassoProblem pr = random_problem(rng, 40, 8, 0.0);
  const Matrix scaled = pr.design * pr.scale.cwiseInverse().asDiagonal();
  pr.lambda = (scaled.transpose() * pr.response / 40.0).cwiseAbs().maxCoeff() * (1 + 1e-12);
  const LassoSolution sol = lasso_fit(pr);
  EXPECT_TRUE(sol.converged);
  EXPECT_EQ(sol.coefficients, Vector::Zero(8));
}

TEST(Lasso, UnpenalizedIsLeastSquares) {
  Rng rng(2);
  const LassoProblem pr = random_problem(rng, 60, 6, 0.0);
  const LassoSolution sol = lasso_fit(pr, {1e-13, 1000000, false});
  ASSERT_TRUE(sol.converged);
  const Vector residual = pr.response - pr.design * sol.coefficients;
  EXPECT_LE((pr.design.transpose() * residual / 60.0).cwiseAbs().maxCoeff(), 1e-8);
  const Vector ols = pr.design.colPivHouseholderQr().solve(pr.response);
  EXPECT_LE((ols - sol.coefficients).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Lasso, OneDimensionalSoftThreshold) {
  // A = (1,...,1,-1,...,-1) is centered; unit scale.
  const Eigen::Index m = 10;
  LassoProblem pr;
  pr.design = Matrix(m, 1);
  for (Eigen::Index i = 0; i < m; ++i) pr.design(i, 0) = i < m / 2 ? 1.0 : -1.0;
  pr.response = Vector(m);
  for (Eigen::Index i = 0; i < m; ++i) pr.response(i) = 0.3 * static_cast<double>(i) - 1.0;
  pr.response.array() -= pr.response.mean();
  pr.scale = Vector::Ones(1);
  const double c = pr.design.col(0).dot(pr.response) / m;
  const double a2 = pr.design.col(0).squaredNorm() / m;
  for (double lambda : {0.0, 0.1, 0.5, std::abs(c) - 1e-3, std::abs(c) + 1e-3}) {
    pr.lambda = lambda;
    const double expected = std::copysign(std::max(std::abs(c) - lambda, 0.0), c) / a2;
    EXPECT_NEAR(lasso_fit(pr).coefficients(0), expected, 1e-12) << lambda;
  }
}

TEST(Lasso, ScaleOnlyReparametrizes) {
  Rng rng(3);
  LassoProblem pr = random_problem(rng, 50, 5, 0.05);
  const Vector beta = lasso_fit(pr, {1e-12, 100000, false}).coefficients;
  // Scaling the design column by s and the scale by s leaves u, hence s*beta, unchanged.
  LassoProblem twice = pr;
  twice.design.col(2) *= 3.0;
  twice.scale(2) *= 3.0;
  const Vector beta2 = lasso_fit(twice, {1e-12, 100000, false}).coefficients;
  EXPECT_NEAR(beta2(2) * 3.0, beta(2), 1e-9);
  EXPECT_NEAR(beta2(0), beta(0), 1e-9);
}

TEST(Lasso, KktOnRandomProblems) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.below(50));
    const Eigen::Index m = 10 + static_cast<Eigen::Index>(rng.below(100));
    const LassoProblem pr = random_problem(rng, m, d, 0.02 + 0.3 * rng.uniform());
    const LassoSolution sol = lasso_fit(pr);
    ASSERT_TRUE(sol.converged);
    EXPECT_LE(sol.kkt_gap, 1e-6);
    EXPECT_LE(kkt_violation(pr, sol.coefficients), 1e-6);
  }
}

TEST(Lasso, ObjectiveMonotoneAndBelowZero) {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const LassoProblem pr = random_problem(rng, 30, 20, 0.05);
    const LassoSolution sol = lasso_fit(pr, {1e-9, 100000, true});
    for (std::size_t k = 1; k < sol.objective_trace.size(); ++k) {
      EXPECT_LE(sol.objective_trace[k], sol.objective_trace[k - 1] + 1e-14);
    }
    EXPECT_LE(objective(pr, sol.coefficients), objective(pr, Vector::Zero(20)));
  }
}

TEST(Lasso, ColumnPermutationInvariance) {
  Rng rng(6);
  const LassoOptions opts{1e-9, 100000, false};
  for (int t = 0; t < 10; ++t) {
    const LassoProblem pr = random_problem(rng, 80, 10, 0.03);
    std::vector<int> perm(10);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 9; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    LassoProblem shuffled = pr;
    for (int j = 0; j < 10; ++j) {
      shuffled.design.col(j) = pr.design.col(perm[static_cast<std::size_t>(j)]);
      shuffled.scale(j) = pr.scale(perm[static_cast<std::size_t>(j)]);
    }
    const Vector a = lasso_fit(pr, opts).coefficients;
    const Vector b = lasso_fit(shuffled, opts).coefficients;
    for (int j = 0; j < 10; ++j) EXPECT_NEAR(b(j), a(perm[static_cast<std::size_t>(j)]), 10 * 1e-9 * 100);
  }
}

TEST(Lasso, WarmStartReachesSameSolution) {
  Rng rng(7);
  const LassoProblem pr = random_problem(rng, 60, 12, 0.04);
  const Matrix scaled = pr.design * pr.scale.cwiseInverse().asDiagonal();
  const Matrix gram = scaled.transpose() * scaled / 60.0;
  const Vector corr = scaled.transpose() * pr.response / 60.0;
  const LassoOptions opts{1e-11, 100000, false};
  const Vector cold = lasso_fit_gram(gram, corr, 0.04, opts).coefficients;
  const Vector start = Vector::Constant(12, 0.3);
  const Vector warm = lasso_fit_gram(gram, corr, 0.04, opts, &start).coefficients;
  EXPECT_LE((cold - warm).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Lasso, IterationLimitIsFlagged) {
  Rng rng(8);
  const LassoProblem pr = random_problem(rng, 40, 15, 0.001);
  const LassoSolution sol = lasso_fit(pr, {1e-14, 1, false});
  EXPECT_FALSE(sol.converged);
  EXPECT_EQ(sol.iterations, 1u);
  EXPECT_TRUE(sol.coefficients.allFinite());
}

TEST(Lasso, InputValidation) {
  Rng rng(9);
  LassoProblem pr = random_problem(rng, 10, 3, 0.1);
  pr.lambda = -1.0;
  EXPECT_THROW(lasso_fit(pr), InvalidParameter);
  pr.lambda = 0.1;
  pr.scale(1) = 0.0;
  EXPECT_THROW(lasso_fit(pr), InvalidParameter);
  pr.scale = Vector::Ones(2);
  EXPECT_THROW(lasso_fit(pr), DimensionMismatch);
}

TEST(DefaultLambda, Values) {
  const double e = std::numbers::e;
  EXPECT_NEAR(default_lambda(1.0, e, 1.0, 2.0), 2.0, 1e-15);
  EXPECT_NEAR(default_lambda(4.0, 50, 600, 2.0), 2.0 * default_lambda(1.0, 50, 600, 2.0), 1e-15);
  // 2 * sqrt(3.912023 / 600)
  EXPECT_NEAR(default_lambda(1.0, 50, 600, 2.0), 0.161494, 1e-6);
  EXPECT_THROW(default_lambda(0.0, 50, 600, 2.0), InvalidParameter);
}
