#include "matgraph/simulate.hpp"

#include "matgraph/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

namespace matgraph {

namespace {

void require_spd(const SymMatrix& m, const char* name) {
  const EigenDecomp e = sym_eigendecomp(m);
  if (!(e.values(e.values.size() - 1) > 0.0)) {
    throw InvalidInput(std::string(name) + " is not positive definite");
  }
}

}  // namespace

KroneckerModel KroneckerModel::from_spatial_precision(const SymMatrix& omega_L,
                                                      const SymMatrix& sigma_T) {
  require_spd(omega_L, "omega_L");
  require_spd(sigma_T, "sigma_T");
  return {spd_inverse(omega_L), sigma_T, omega_L, spd_inverse(sigma_T)};
}

KroneckerModel KroneckerModel::from_covariances(const SymMatrix& sigma_L, const SymMatrix& sigma_T) {
  require_spd(sigma_L, "sigma_L");
  require_spd(sigma_T, "sigma_T");
  return {sigma_L, sigma_T, spd_inverse(sigma_L), spd_inverse(sigma_T)};
}

SpatioTemporalSample::SpatioTemporalSample(std::vector<Matrix> subjects)
    : subjects_(std::move(subjects)) {
  if (subjects_.size() < 2) throw InvalidInput("sample needs at least 2 subjects");
  p_ = static_cast<std::size_t>(subjects_.front().rows());
  q_ = static_cast<std::size_t>(subjects_.front().cols());
  if (p_ < 2 || q_ < 1) throw InvalidInput("sample needs p >= 2 and q >= 1");
  for (std::size_t k = 0; k < subjects_.size(); ++k) {
    const Matrix& x = subjects_[k];
    if (static_cast<std::size_t>(x.rows()) != p_ || static_cast<std::size_t>(x.cols()) != q_) {
      std::ostringstream os;
      os << "subject " << k << " has shape " << x.rows() << "x" << x.cols() << ", expected " << p_
         << "x" << q_;
      throw DimensionMismatch(os.str());
    }
    if (!x.allFinite()) {
      std::ostringstream os;
      os << "subject " << k << " has non-finite entries";
      throw InvalidInput(os.str());
    }
  }
}

SpatioTemporalSample SpatioTemporalSample::scaled(double factor) const {
  std::vector<Matrix> out;
  out.reserve(subjects_.size());
  for (const Matrix& x : subjects_) out.push_back(factor * x);
  return SpatioTemporalSample(std::move(out));
}

SpatioTemporalSample sample_matrix_normal(const KroneckerModel& model, std::size_t n, Rng& rng) {
  const auto p = static_cast<Eigen::Index>(model.p());
  const auto q = static_cast<Eigen::Index>(model.q());
  const Matrix left = sym_sqrt(model.sigma_L).matrix();
  const Matrix right = sym_sqrt(model.sigma_T).matrix();
  std::vector<Matrix> subjects;
  subjects.reserve(n);
  Matrix z(p, q);
  for (std::size_t k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < p; ++i) {
      for (Eigen::Index l = 0; l < q; ++l) z(i, l) = rng.normal();
    }
    subjects.emplace_back(left * z * right);
  }
  return SpatioTemporalSample(std::move(subjects));
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Model1: return "model1";
    case ModelKind::Model2: return "model2";
    case ModelKind::Model3: return "model3";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "model1" || name == "Model1" || name == "1") return ModelKind::Model1;
  if (name == "model2" || name == "Model2" || name == "2") return ModelKind::Model2;
  if (name == "model3" || name == "Model3" || name == "3") return ModelKind::Model3;
  throw InvalidParameter("unknown model kind '" + name + "'");
}

SymMatrix eigen_shift(const SymMatrix& m) {
  const EigenDecomp e = sym_eigendecomp(m);
  const double delta = std::abs(e.values(e.values.size() - 1)) + 0.05;
  const auto d = static_cast<Eigen::Index>(m.dim());
  Matrix shifted = (m.matrix() + delta * Matrix::Identity(d, d)) / (1.0 + delta);
  return SymMatrix(std::move(shifted));
}

SymMatrix build_model(ModelKind kind, std::size_t p, Rng& rng) {
  if (p < 4) throw InvalidParameter("build_model: p must be at least 4");
  const auto d = static_cast<Eigen::Index>(p);
  Matrix m = Matrix::Zero(d, d);
  switch (kind) {
    case ModelKind::Model1:
      for (Eigen::Index i = 0; i < d; ++i) {
        m(i, i) = 1.0;
        if (i + 1 < d) m(i, i + 1) = m(i + 1, i) = 0.6;
        if (i + 2 < d) m(i, i + 2) = m(i + 2, i) = 0.3;
      }
      return SymMatrix(std::move(m));
    case ModelKind::Model2:
      if (p % 10 != 0) throw InvalidParameter("build_model: Model2 needs p divisible by 10");
      // Diagonal stays zero before the shift.
      for (Eigen::Index hub = 0; hub < d; hub += 10) {
        for (Eigen::Index j = hub + 1; j < hub + 10; ++j) m(hub, j) = m(j, hub) = 0.5;
      }
      return eigen_shift(SymMatrix(std::move(m)));
    case ModelKind::Model3: {
      const double prob = 2.0 / static_cast<double>(p);
      for (Eigen::Index i = 0; i < d; ++i) {
        m(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < d; ++j) {
          if (rng.bernoulli(prob)) m(i, j) = m(j, i) = 0.8;
        }
      }
      return eigen_shift(SymMatrix(std::move(m)));
    }
  }
  throw InvalidParameter("build_model: unknown kind");
}

SymMatrix build_global_alternative(std::size_t p, std::size_t n, std::size_t q, Rng& rng) {
  if (p < 8) throw InvalidParameter("build_global_alternative: p must be at least 8");
  if (n == 0 || q == 0) throw InvalidParameter("build_global_alternative: n and q must be positive");
  const double unit = std::sqrt(std::log(static_cast<double>(p)) / static_cast<double>(n * q));
  const std::uint64_t upper = static_cast<std::uint64_t>(p) * (p - 1) / 2;

  std::set<std::uint64_t> chosen;
  while (chosen.size() < 4) chosen.insert(rng.below(upper));

  const auto d = static_cast<Eigen::Index>(p);
  Matrix m = Matrix::Identity(d, d);
  for (std::uint64_t index : chosen) {
    // Unrank index into (i, j), i < j, row-major over the upper triangle.
    std::uint64_t i = 0;
    std::uint64_t remaining = index;
    while (remaining >= p - 1 - i) {
      remaining -= p - 1 - i;
      ++i;
    }
    const std::uint64_t j = i + 1 + remaining;
    const double magnitude = rng.uniform(2.0 * unit, 4.0 * unit);
    const double value = rng.bernoulli(0.5) ? magnitude : -magnitude;
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);
    m(ii, jj) = m(jj, ii) = value;
  }
  return eigen_shift(SymMatrix(std::move(m)));
}

SymMatrix null_spatial(std::size_t p) { return SymMatrix::identity(p); }

}  // namespace matgraph
