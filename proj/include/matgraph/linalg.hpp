#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace matgraph {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Dense symmetric matrix. Symmetry is exact: entry (i,j) and (j,i) hold the
/// same double. Used for every covariance and precision factor.
class SymMatrix {
 public:
  SymMatrix() = default;

  /// Throws InvalidInput unless `m` is square, non-empty and exactly symmetric.
  explicit SymMatrix(Matrix m);

  /// Averages `m` with its transpose, which makes it exactly symmetric.
  static SymMatrix symmetrized(const Matrix& m);
  static SymMatrix identity(std::size_t dim);
  static SymMatrix diagonal(const Vector& d);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

struct EigenDecomp {
  Vector values;   // descending
  Matrix vectors;  // columns are eigenvectors, ordered like `values`
};

/// Entry (i,j) = rho^|i-j|. Throws InvalidParameter for |rho| >= 1 or dim == 0.
SymMatrix ar1_covariance(std::size_t dim, double rho);

/// Throws InvalidInput on non-finite entries.
EigenDecomp sym_eigendecomp(const SymMatrix& a);

struct InvSqrtResult {
  SymMatrix matrix;
  std::size_t floored = 0;  // eigenvalues raised to the floor
  std::vector<std::string> warnings;
};

/// V diag(max(lambda, floor))^{-1/2} V^T.
InvSqrtResult inv_sqrt(const SymMatrix& a, double floor);

/// Same, with floor = relative_floor * max(lambda_max, tiny).
InvSqrtResult inv_sqrt(const SymMatrix& a);

inline constexpr double kDefaultRelativeFloor = 1e-10;

/// Symmetric square root of a positive semidefinite matrix (negative
/// eigenvalues clamped to zero).
SymMatrix sym_sqrt(const SymMatrix& a);

/// Inverse of an SPD matrix via its eigendecomposition. Throws InvalidInput
/// when the smallest eigenvalue is not positive.
SymMatrix spd_inverse(const SymMatrix& a);

inline constexpr std::size_t kDefaultKronCap = 4096;

/// Block (i,j) = a(i,j) * b. Throws ResourceError when the product
/// dimension exceeds `cap`.
SymMatrix kron(const SymMatrix& a, const SymMatrix& b, std::size_t cap = kDefaultKronCap);

/// max |a_ij|
double max_abs(const Matrix& a);

}  // namespace matgraph
