#pragma once

// Brute-force verifiers for small instances. They share no code path with the
// certificates they check beyond the density and least-squares primitives.

#include <cstddef>
#include <vector>

#include "lowdensity/rng.hpp"
#include "lowdensity/types.hpp"

namespace lowdensity {

/// Singular values below this fraction of the largest count as zero.
inline constexpr double kNullspaceRelativeCutoff = 1e-10;

/// Upper limit on the number of supports the exhaustive search may visit.
inline constexpr double kMaxExhaustiveSupports = 1e7;

/// Orthonormal basis of ker(A) as columns (N x d, possibly d = 0), from the
/// right singular vectors of A.
Matrix nullspace_basis(const Dictionary& a);

struct KernelProbeResult {
  double min_delta_found = 0.0;
  Signal witness = Signal::zeros(1);  // kernel vector attaining min_delta_found, ||.||_inf = 1
  double threshold = 0.0;             // 1 + 1/mu
  std::size_t trials = 0;
  std::size_t kernel_dim = 0;
};

/// Searches ker(A) for a low-density vector: random combinations of the
/// nullspace basis, each refined by coordinate-wise perturbation descent on
/// delta. A falsifier, not a certified global minimizer. TrivialKernel when
/// ker(A) = {0}; TrivialCoherence when mu = 0.
KernelProbeResult probe_kernel_density(const Dictionary& a, std::size_t trials, Rng& rng);

struct ExhaustiveRecovery {
  std::vector<std::size_t> support;  // ascending
  Vector coefficients;               // in `support` order
  double residual_norm = 0.0;
};

/// Visits every support of size <= k and solves least squares on each
/// (rank-deficient supports are skipped). Returns the smallest residual;
/// residuals within 1e-10 (1 + ||y||) of the minimum count as tied, and ties
/// go to the smaller support, then the lexicographically smallest one.
/// KOutOfRange for k > M; TooLarge past 1e7 supports.
ExhaustiveRecovery exhaustive_sparse_recovery(const Dictionary& a, const Signal& y, std::size_t k);

/// Number of supports of size <= k out of n, saturating at +inf.
double supports_up_to(std::size_t n, std::size_t k);

}  // namespace lowdensity
