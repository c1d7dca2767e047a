#pragma once

#include <cstddef>
#include <utility>

#include "lowdensity/types.hpp"

namespace lowdensity {

struct CoherenceReport {
  double mu = 0.0;
  /// (i, j) with i < j attaining mu; (0, 0) when the dictionary has one column.
  std::pair<std::size_t, std::size_t> argmax_pair{0, 0};
  /// Set for single-column dictionaries, where mu = 0 by convention.
  bool single_column = false;
};

struct MutualCoherenceReport {
  double mu_m = 0.0;
  /// (i, j): column i of A, column j of B.
  std::pair<std::size_t, std::size_t> argmax_pair{0, 0};
};

/// Full Gram matrix A^H A.
Matrix gram_matrix(const Dictionary& a);

/// max_{i != j} |a_i^H a_j|, exact over all pairs (ties: first pair in
/// row-major order over i < j).
CoherenceReport coherence(const Dictionary& a);

/// max over all (i, j), diagonal pairs included, of |a_i^H b_j|.
/// RowMismatch if the dictionaries have different row counts.
MutualCoherenceReport mutual_coherence(const Dictionary& a, const Dictionary& b);

struct LinfDensityBounds {
  double lower = 0.0;  // 1 - mu (delta - 1)
  double upper = 0.0;  // 1 + mu (delta - 1)
  double ratio = 0.0;  // ||A^H A x||_inf / ||x||_inf
  double delta = 0.0;
  double mu = 0.0;

  bool holds(double tol = kBoundTolerance) const noexcept {
    return lower - tol <= ratio && ratio <= upper + tol;
  }
};

/// Sandwich of the Gram amplification of x by its delta-density.
/// ZeroSignal for x = 0; DimensionMismatch if x.dim() != A.cols().
LinfDensityBounds linf_density_bounds(const Dictionary& a, const Signal& x);
LinfDensityBounds linf_density_bounds(const Dictionary& a, const Signal& x, double mu);

struct CrossCoherenceBound {
  double lhs = 0.0;  // ||A^H B z||_inf
  double rhs = 0.0;  // mu_m ||z||_1

  bool holds(double tol = kBoundTolerance) const noexcept { return lhs <= rhs + tol; }
};

CrossCoherenceBound cross_coherence_bound(const Dictionary& a, const Dictionary& b,
                                          const Signal& z);

struct GramConditioningBound {
  double bound = 0.0;       // [1 - mu (|S| - 1)]^+
  double lambda_min = 0.0;  // smallest eigenvalue of A_S^H A_S

  bool holds(double tol = kBoundTolerance) const noexcept { return lambda_min >= bound - tol; }
};

/// Gershgorin lower bound on the smallest eigenvalue of the support Gram
/// next to its exact value. EmptySupport for |S| = 0.
GramConditioningBound gram_conditioning_bound(const Dictionary& a, const SupportSet& support);
GramConditioningBound gram_conditioning_bound(const Dictionary& a, const SupportSet& support,
                                              double mu);

}  // namespace lowdensity
