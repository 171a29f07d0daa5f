#include "matgraph/linalg.hpp"

#include "matgraph/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace matgraph {

SymMatrix::SymMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw InvalidInput("SymMatrix requires a non-empty square matrix");
  }
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m_.cols(); ++j) {
      // NaN compares unequal; non-finite checks happen where they matter.
      if (m_(i, j) != m_(j, i) && !(std::isnan(m_(i, j)) && std::isnan(m_(j, i)))) {
        std::ostringstream os;
        os << "matrix is not symmetric at (" << i << ", " << j << ")";
        throw InvalidInput(os.str());
      }
    }
  }
}

SymMatrix SymMatrix::symmetrized(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("symmetrized: matrix is not square");
  Matrix s = 0.5 * (m + m.transpose());
  return SymMatrix(std::move(s));
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  if (dim == 0) throw InvalidParameter("identity: dim must be positive");
  const auto d = static_cast<Eigen::Index>(dim);
  return SymMatrix(Matrix::Identity(d, d));
}

SymMatrix SymMatrix::diagonal(const Vector& d) {
  return SymMatrix(Matrix(d.asDiagonal()));
}

SymMatrix ar1_covariance(std::size_t dim, double rho) {
  if (dim == 0) throw InvalidParameter("ar1_covariance: dim must be positive");
  if (!(std::abs(rho) < 1.0)) {
    throw InvalidParameter("ar1_covariance: |rho| must be < 1");
  }
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      m(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
    }
  }
  return SymMatrix(std::move(m));
}

EigenDecomp sym_eigendecomp(const SymMatrix& a) {
  if (!a.matrix().allFinite()) throw InvalidInput("sym_eigendecomp: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw InvalidInput("sym_eigendecomp: eigen solver did not converge");
  }
  // Eigen returns ascending order.
  const Eigen::Index d = a.matrix().rows();
  EigenDecomp out;
  out.values.resize(d);
  out.vectors.resize(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    out.values(k) = solver.eigenvalues()(d - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(d - 1 - k);
  }
  return out;
}

namespace {

SymMatrix spectral_function(const EigenDecomp& e, const Vector& transformed) {
  Matrix m = e.vectors * transformed.asDiagonal() * e.vectors.transpose();
  return SymMatrix::symmetrized(m);
}

}  // namespace

namespace {

InvSqrtResult floored_inv_sqrt(const EigenDecomp& e, double floor) {
  InvSqrtResult out;
  Vector t(e.values.size());
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    double v = e.values(k);
    if (v < floor) {
      v = floor;
      ++out.floored;
    }
    t(k) = 1.0 / std::sqrt(v);
  }
  if (out.floored > 0) {
    std::ostringstream os;
    os << out.floored << " of " << t.size() << " eigenvalues raised to floor " << floor;
    out.warnings.push_back(os.str());
  }
  out.matrix = spectral_function(e, t);
  return out;
}

}  // namespace

InvSqrtResult inv_sqrt(const SymMatrix& a, double floor) {
  if (!(floor > 0.0)) throw InvalidParameter("inv_sqrt: floor must be positive");
  return floored_inv_sqrt(sym_eigendecomp(a), floor);
}

InvSqrtResult inv_sqrt(const SymMatrix& a) {
  const EigenDecomp e = sym_eigendecomp(a);
  const double floor =
      kDefaultRelativeFloor * std::max(e.values(0), std::numeric_limits<double>::min());
  return floored_inv_sqrt(e, floor);
}

SymMatrix sym_sqrt(const SymMatrix& a) {
  const EigenDecomp e = sym_eigendecomp(a);
  Vector t = e.values.cwiseMax(0.0).cwiseSqrt();
  return spectral_function(e, t);
}

SymMatrix spd_inverse(const SymMatrix& a) {
  const EigenDecomp e = sym_eigendecomp(a);
  if (!(e.values(e.values.size() - 1) > 0.0)) {
    throw InvalidInput("spd_inverse: matrix is not positive definite");
  }
  Vector t = e.values.cwiseInverse();
  return spectral_function(e, t);
}

SymMatrix kron(const SymMatrix& a, const SymMatrix& b, std::size_t cap) {
  const std::size_t p = a.dim();
  const std::size_t q = b.dim();
  if (p > cap / q) {
    std::ostringstream os;
    os << "kron: result dimension " << p << "*" << q << " exceeds cap " << cap;
    throw ResourceError(os.str());
  }
  const auto pp = static_cast<Eigen::Index>(p);
  const auto qq = static_cast<Eigen::Index>(q);
  Matrix m(pp * qq, pp * qq);
  for (Eigen::Index i = 0; i < pp; ++i) {
    for (Eigen::Index j = 0; j < pp; ++j) {
      m.block(i * qq, j * qq, qq, qq) = a.matrix()(i, j) * b.matrix();
    }
  }
  return SymMatrix(std::move(m));
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace matgraph
