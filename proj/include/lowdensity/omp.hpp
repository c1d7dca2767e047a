#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lowdensity/types.hpp"

namespace lowdensity {

/// Correlations at or below this value stop OMP: the residual is numerically
/// orthogonal to every remaining atom.
inline constexpr double kCorrelationFloor = 1e-14;

/// Smallest singular value of A_S below which least squares is refused.
inline constexpr double kRankTolerance = 1e-10;

struct AtomSelection {
  std::size_t index = 0;
  double correlation = 0.0;  // |a_index^H r|
};

/// argmax over columns not in `selected` of |a_i^H r|; lowest index wins
/// ties. EmptyRemaining when every column is already selected.
AtomSelection omp_select(const Dictionary& a, const Vector& residual, const SupportSet& selected);

struct LeastSquaresFit {
  Vector coefficients;  // in support order
  Vector residual;      // y - A_S c
};

/// min_c ||y - A_S c||_2 by Householder QR of A_S. For an empty support the
/// residual is y. RankDeficient when sigma_min(A_S) < 1e-10.
LeastSquaresFit least_squares_on_support(const Dictionary& a, const SupportSet& support,
                                         const Vector& y);

struct OmpTrace {
  SupportSet support;                 // selection order
  Vector coefficients;                // least-squares estimate on `support`
  std::vector<double> residual_norms; // ||r^(t)||_2 for t = 0..iterations
  std::vector<std::size_t> selected;  // index picked in each iteration
  std::vector<double> correlations;   // winning |a_k^H r^(t-1)| per iteration
  Vector residual;                    // final residual

  std::size_t iterations() const noexcept { return selected.size(); }
  /// Full-length estimate with zeros off the support.
  Signal estimate(std::size_t n) const;
};

/// Orthogonal matching pursuit for at most `t_max` iterations. Stops early when
/// the winning correlation is <= 1e-14 or, if given, ||r||_2 <= residual_tol.
/// TMaxOutOfRange unless 1 <= t_max <= min(M, N); DimensionMismatch if
/// y.dim() != M. Propagates RankDeficient.
OmpTrace omp_run(const Dictionary& a, const Signal& y, std::size_t t_max,
                 std::optional<double> residual_tol = std::nullopt);

}  // namespace lowdensity
