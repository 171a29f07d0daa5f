#pragma once

#include "matgraph/linalg.hpp"
#include "matgraph/rng.hpp"

namespace matgraph::testing {

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

/// B B^T / dim + shift I
inline SymMatrix random_spd(std::size_t dim, Rng& rng, double shift = 0.5) {
  const auto d = static_cast<Eigen::Index>(dim);
  const Matrix b = random_matrix(d, d, rng);
  Matrix a = b * b.transpose() / static_cast<double>(dim) + shift * Matrix::Identity(d, d);
  return SymMatrix::symmetrized(a);
}

}  // namespace matgraph::testing
