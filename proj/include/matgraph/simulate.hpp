#pragma once

#include "matgraph/linalg.hpp"
#include "matgraph/rng.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace matgraph {

/// Separable matrix-normal law: Cov{vec(X)} = sigma_L (x) sigma_T.
struct KroneckerModel {
  SymMatrix sigma_L;
  SymMatrix sigma_T;
  SymMatrix omega_L;
  SymMatrix omega_T;

  std::size_t p() const { return sigma_L.dim(); }
  std::size_t q() const { return sigma_T.dim(); }

  /// Builds the model from the spatial precision and temporal covariance.
  /// Throws InvalidInput when either factor is not SPD.
  static KroneckerModel from_spatial_precision(const SymMatrix& omega_L, const SymMatrix& sigma_T);
  static KroneckerModel from_covariances(const SymMatrix& sigma_L, const SymMatrix& sigma_T);
};

/// n subjects, each a p x q matrix (rows are locations, columns time points).
class SpatioTemporalSample {
 public:
  SpatioTemporalSample() = default;

  /// Throws InvalidInput unless n >= 2, p >= 2, q >= 1, every matrix has the
  /// same shape and all entries are finite.
  explicit SpatioTemporalSample(std::vector<Matrix> subjects);

  std::size_t n() const { return subjects_.size(); }
  std::size_t p() const { return p_; }
  std::size_t q() const { return q_; }

  const Matrix& subject(std::size_t k) const { return subjects_[k]; }
  const std::vector<Matrix>& subjects() const { return subjects_; }

  SpatioTemporalSample scaled(double factor) const;

 private:
  std::vector<Matrix> subjects_;
  std::size_t p_ = 0;
  std::size_t q_ = 0;
};

/// X_k = sigma_L^{1/2} Z_k sigma_T^{1/2}, Z_k with i.i.d. N(0,1) entries
/// drawn row-major, subject by subject.
SpatioTemporalSample sample_matrix_normal(const KroneckerModel& model, std::size_t n, Rng& rng);

enum class ModelKind { Model1, Model2, Model3 };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

/// Spatial precision matrices for the multiple-testing experiments.
///   Model1: banded, 1 / 0.6 / 0.3 on the first three diagonals.
///   Model2: one star per block of 10 (hub = first node, weight 0.5), shifted.
///   Model3: random 0.8 * Bernoulli(2/p) entries, unit diagonal, shifted.
/// The shift is (M + delta I) / (1 + delta), delta = |lambda_min(M)| + 0.05.
SymMatrix build_model(ModelKind kind, std::size_t p, Rng& rng);

/// Global-test alternative: I + U with four random upper-triangle entries
/// (mirrored) of magnitude in [2, 4] * sqrt(log p / (n q)), shifted as above.
SymMatrix build_global_alternative(std::size_t p, std::size_t n, std::size_t q, Rng& rng);

/// Null spatial precision (identity).
SymMatrix null_spatial(std::size_t p);

/// (M + delta I) / (1 + delta) with delta = |lambda_min(M)| + 0.05.
SymMatrix eigen_shift(const SymMatrix& m);

}  // namespace matgraph
