#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lowdensity/error.hpp"

namespace lowdensity {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;  // column-major: every atom is contiguous

/// Uniform absolute tolerance for the inequality contracts (bounds are exact
/// in exact arithmetic; the slack only absorbs rounding).
inline constexpr double kBoundTolerance = 1e-9;

/// Column-norm tolerance accepted for a dictionary atom.
inline constexpr double kColumnNormTolerance = 1e-8;

/// Coherence at or below this value is treated as an orthonormal system.
inline constexpr double kTrivialCoherence = 1e-12;

/// A finite complex vector. Real data is embedded with zero imaginary parts.
class Signal {
 public:
  explicit Signal(Vector entries);
  Signal(std::initializer_list<Complex> entries);

  static Signal zeros(std::size_t dim);
  static Signal from_real(std::span<const double> values);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.size()); }
  const Vector& entries() const noexcept { return entries_; }
  Complex operator[](std::size_t i) const { return entries_[static_cast<Eigen::Index>(i)]; }
  std::span<const Complex> view() const noexcept { return {entries_.data(), dim()}; }

 private:
  Vector entries_;
};

/// Ordered set of distinct zero-based column indices. Order is insertion
/// (selection) order.
class SupportSet {
 public:
  SupportSet() = default;
  /// Throws InvalidSupport if an index repeats or is >= `bound`.
  SupportSet(std::vector<std::size_t> indices, std::size_t bound);

  void insert(std::size_t index, std::size_t bound);
  bool contains(std::size_t index) const noexcept;
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  std::vector<std::size_t> sorted() const;

 private:
  std::vector<std::size_t> indices_;
};

/// M x N complex matrix whose columns (atoms) have unit l2 norm.
/// Build through `make_dictionary` and friends in core.hpp.
class Dictionary {
 public:
  std::size_t rows() const noexcept { return static_cast<std::size_t>(atoms_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(atoms_.cols()); }
  const Matrix& matrix() const noexcept { return atoms_; }
  std::span<const Complex> atom(std::size_t j) const noexcept {
    return {atoms_.col(static_cast<Eigen::Index>(j)).data(), rows()};
  }

  /// Columns of the dictionary restricted to `support`, in support order.
  Matrix restrict(const SupportSet& support) const;
  Vector apply(const Signal& x) const;

 private:
  friend Dictionary make_validated_dictionary(Matrix atoms);
  explicit Dictionary(Matrix atoms) : atoms_(std::move(atoms)) {}

  Matrix atoms_;
};

}  // namespace lowdensity
