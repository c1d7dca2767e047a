#include "lowdensity/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lowdensity/kernels.hpp"

namespace lowdensity {

// ---------------------------------------------------------------------------
// Signal / SupportSet / Dictionary members

namespace {

bool all_finite(const Complex* data, Eigen::Index count) {
  for (Eigen::Index i = 0; i < count; ++i) {
    if (!std::isfinite(data[i].real()) || !std::isfinite(data[i].imag())) {
      return false;
    }
  }
  return true;
}

double column_norm(const Matrix& m, Eigen::Index j) {
  return std::sqrt(simd::squared_norm({m.col(j).data(), static_cast<std::size_t>(m.rows())}));
}

}  // namespace

Signal::Signal(Vector entries) : entries_(std::move(entries)) {
  if (entries_.size() < 1) {
    throw Error(ErrorCode::InvalidArgument, "signal dimension must be >= 1");
  }
  if (!all_finite(entries_.data(), entries_.size())) {
    throw Error(ErrorCode::NonFinite, "signal has a NaN or Inf entry");
  }
}

Signal::Signal(std::initializer_list<Complex> entries)
    : Signal([&] {
        Vector v(static_cast<Eigen::Index>(entries.size()));
        Eigen::Index i = 0;
        for (const Complex& c : entries) {
          v[i++] = c;
        }
        return v;
      }()) {}

Signal Signal::zeros(std::size_t dim) {
  return Signal(Vector::Zero(static_cast<Eigen::Index>(dim)));
}

Signal Signal::from_real(std::span<const double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = Complex(values[i], 0.0);
  }
  return Signal(std::move(v));
}

SupportSet::SupportSet(std::vector<std::size_t> indices, std::size_t bound) {
  indices_.reserve(indices.size());
  for (std::size_t index : indices) {
    insert(index, bound);
  }
}

void SupportSet::insert(std::size_t index, std::size_t bound) {
  if (index >= bound) {
    throw Error(ErrorCode::InvalidSupport,
                "index " + std::to_string(index) + " out of range for " + std::to_string(bound) +
                    " columns");
  }
  if (contains(index)) {
    throw Error(ErrorCode::InvalidSupport, "duplicate index " + std::to_string(index));
  }
  indices_.push_back(index);
}

bool SupportSet::contains(std::size_t index) const noexcept {
  return std::find(indices_.begin(), indices_.end(), index) != indices_.end();
}

std::vector<std::size_t> SupportSet::sorted() const {
  std::vector<std::size_t> out = indices_;
  std::sort(out.begin(), out.end());
  return out;
}

Matrix Dictionary::restrict(const SupportSet& support) const {
  Matrix out(atoms_.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k) {
    const std::size_t j = support.indices()[k];
    if (j >= cols()) {
      throw Error(ErrorCode::InvalidSupport, "support index exceeds dictionary width");
    }
    out.col(static_cast<Eigen::Index>(k)) = atoms_.col(static_cast<Eigen::Index>(j));
  }
  return out;
}

Vector Dictionary::apply(const Signal& x) const {
  if (x.dim() != cols()) {
    throw Error(ErrorCode::DimensionMismatch, "signal length " + std::to_string(x.dim()) +
                                                  " != dictionary width " +
                                                  std::to_string(cols()));
  }
  return atoms_ * x.entries();
}

// ---------------------------------------------------------------------------
// Constructors

double max_column_norm_deviation(const Matrix& matrix) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    worst = std::max(worst, std::abs(column_norm(matrix, j) - 1.0));
  }
  return worst;
}

Dictionary make_validated_dictionary(Matrix atoms) {
  if (atoms.rows() < 1 || atoms.cols() < 1) {
    throw Error(ErrorCode::InvalidArgument, "dictionary must have at least one row and column");
  }
  if (!all_finite(atoms.data(), atoms.size())) {
    throw Error(ErrorCode::NonFinite, "dictionary has a NaN or Inf entry");
  }
  for (Eigen::Index j = 0; j < atoms.cols(); ++j) {
    const double deviation = std::abs(column_norm(atoms, j) - 1.0);
    if (deviation > kColumnNormTolerance) {
      throw Error(ErrorCode::NotNormalized,
                  "column " + std::to_string(j) + " deviates from unit norm by " +
                      std::to_string(deviation));
    }
  }
  return Dictionary(std::move(atoms));
}

Dictionary make_dictionary(const Matrix& matrix, bool normalize) {
  if (matrix.rows() < 1 || matrix.cols() < 1) {
    throw Error(ErrorCode::InvalidArgument, "dictionary must have at least one row and column");
  }
  if (!all_finite(matrix.data(), matrix.size())) {
    throw Error(ErrorCode::NonFinite, "dictionary has a NaN or Inf entry");
  }
  if (!normalize) {
    return make_validated_dictionary(matrix);
  }
  Matrix scaled = matrix;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
    const double norm = column_norm(scaled, j);
    if (norm < 1e-12) {
      throw Error(ErrorCode::ZeroColumn, "column " + std::to_string(j) + " has zero norm");
    }
    scaled.col(j) /= norm;
  }
  return make_validated_dictionary(std::move(scaled));
}

Dictionary hadamard_dictionary(std::size_t m) {
  if (m == 0 || (m & (m - 1)) != 0) {
    throw Error(ErrorCode::NotPowerOfTwo, std::to_string(m) + " is not a power of two");
  }
  const auto size = static_cast<Eigen::Index>(m);
  Matrix h(size, size);
  h(0, 0) = 1.0;
  // Sylvester doubling: H_{2n} = [[H_n, H_n], [H_n, -H_n]].
  for (Eigen::Index n = 1; n < size; n *= 2) {
    h.block(0, n, n, n) = h.block(0, 0, n, n);
    h.block(n, 0, n, n) = h.block(0, 0, n, n);
    h.block(n, n, n, n) = -h.block(0, 0, n, n);
  }
  h /= std::sqrt(static_cast<double>(m));
  return make_validated_dictionary(std::move(h));
}

Dictionary identity_dictionary(std::size_t m) {
  if (m == 0) {
    throw Error(ErrorCode::InvalidArgument, "identity dimension must be >= 1");
  }
  const auto size = static_cast<Eigen::Index>(m);
  return make_validated_dictionary(Matrix::Identity(size, size));
}

Dictionary concat_dictionaries(const Dictionary& a, const Dictionary& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::RowMismatch, std::to_string(a.rows()) + " rows vs " +
                                            std::to_string(b.rows()) + " rows");
  }
  Matrix joined(a.matrix().rows(), a.matrix().cols() + b.matrix().cols());
  joined << a.matrix(), b.matrix();
  return make_validated_dictionary(std::move(joined));
}

Dictionary random_unit_dictionary(std::size_t m, std::size_t n, Rng& rng) {
  if (m < 1 || n < 1) {
    throw Error(ErrorCode::InvalidArgument, "random dictionary needs M >= 1 and N >= 1");
  }
  Matrix raw(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  // Column-major fill order is part of the determinism contract.
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    for (Eigen::Index i = 0; i < raw.rows(); ++i) {
      raw(i, j) = rng.complex_normal();
    }
  }
  return make_dictionary(raw, true);
}

Dictionary random_orthonormal_basis(std::size_t m, Rng& rng) {
  if (m < 1) {
    throw Error(ErrorCode::InvalidArgument, "basis dimension must be >= 1");
  }
  const auto size = static_cast<Eigen::Index>(m);
  Matrix raw(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    for (Eigen::Index i = 0; i < size; ++i) {
      raw(i, j) = rng.complex_normal();
    }
  }
  Eigen::HouseholderQR<Matrix> qr(raw);
  Matrix q = qr.householderQ() * Matrix::Identity(size, size);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < size; ++j) {
    const double magnitude = std::abs(r(j, j));
    if (magnitude > 0.0) {
      q.col(j) *= r(j, j) / magnitude;
    }
  }
  return make_dictionary(q, true);
}

}  // namespace lowdensity

namespace lowdensity {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::RowMismatch: return "RowMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::ZeroSignal: return "ZeroSignal";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::InvalidSupport: return "InvalidSupport";
    case ErrorCode::TrivialCoherence: return "TrivialCoherence";
    case ErrorCode::NonPositiveMu: return "NonPositiveMu";
    case ErrorCode::TMaxOutOfRange: return "TMaxOutOfRange";
    case ErrorCode::EmptyRemaining: return "EmptyRemaining";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::TrivialKernel: return "TrivialKernel";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace lowdensity
