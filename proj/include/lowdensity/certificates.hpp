#pragma once

// Checkable sufficient conditions built on the delta-density:
//  - kernel certificate: delta(x) < 1 + 1/mu  =>  A x != 0
//  - uncertainty relation for A x = B z
//  - OMP support-recovery certificate with its per-iteration tail densities
//
// Certificate inequalities are strict and evaluated without slack, so
// borderline inputs are reported as not certified.

#include <cstddef>
#include <vector>

#include "lowdensity/types.hpp"

namespace lowdensity {

struct KernelCertificate {
  double delta = 0.0;
  double threshold = 0.0;  // 1 + 1/mu; +inf for trivial coherence
  bool certified_nonzero = false;
  bool classical_certified = false;  // ||x||_0 < threshold
  double mu = 0.0;
  std::size_t sparsity = 0;
  /// mu == 0 (orthonormal columns): every nonzero x is outside the kernel.
  bool trivial_coherence = false;
};

KernelCertificate kernel_certificate(const Dictionary& a, const Signal& x);
KernelCertificate kernel_certificate(double mu, const Signal& x);

struct UncertaintyReport {
  double lhs = 0.0;  // [1 - mu_a (delta_x - 1)]^+ [1 - mu_b (delta_z - 1)]^+
  double rhs = 0.0;  // delta_x delta_z mu_m^2
  double residual_gap = 0.0;         // rhs - lhs
  double constraint_residual = 0.0;  // ||A x - B z||_2
  double delta_x = 0.0;
  double delta_z = 0.0;
  double mu_a = 0.0;
  double mu_b = 0.0;
  double mu_m = 0.0;
  double measurement_norm = 0.0;  // ||A x||_2

  /// The relation only constrains pairs with A x = B z.
  bool applies() const noexcept {
    return constraint_residual <= 1e-9 * (measurement_norm + 1.0);
  }
  bool holds(double tol = kBoundTolerance) const noexcept { return lhs <= rhs + tol; }
};

UncertaintyReport uncertainty_check(const Dictionary& a, const Dictionary& b, const Signal& x,
                                    const Signal& z);

/// 1 / mu_m^2. NonPositiveMu unless 0 < mu_m <= 1.
double onb_uncertainty_bound(double mu_m);

/// (1 + 1/mu) / 2. NonPositiveMu for mu <= 0.
double classical_omp_threshold(double mu);

/// 2 + 1/mu - 2/(1 - alpha); may be negative.
double alpha_decay_iteration_bound(double alpha, double mu);

struct GuaranteeStep {
  std::size_t t = 0;          // 1-based iteration number
  double tail_delta = 0.0;    // delta of x with its t-1 largest entries removed
  double threshold_t = 0.0;   // C - (t - 1)/2
  bool ok = false;
};

struct GuaranteeReport {
  std::size_t t_max = 0;
  double mu = 0.0;
  double C = 0.0;  // (1 + 1/mu) / 2
  std::vector<GuaranteeStep> per_iteration;
  bool iteration_bound_ok = false;  // t_max < 1 + 1/mu
  bool certified = false;
  double classical_threshold = 0.0;
  /// ||x||_0 < classical_threshold with t_max = ||x||_0.
  bool classical_certified = false;
  bool trivial_coherence = false;
  /// The per-iteration rows assume the largest entries are removed in
  /// descending order. That is what OMP does when certified; for uncertified
  /// inputs the rows are only indicative.
  bool per_iteration_heuristic = true;
};

/// Static OMP certificate: no solver run, only x and the coherence.
/// TMaxOutOfRange unless 1 <= t_max <= x.dim().
GuaranteeReport omp_guarantee(const Dictionary& a, const Signal& x, std::size_t t_max);
GuaranteeReport omp_guarantee(double mu, const Signal& x, std::size_t t_max);

}  // namespace lowdensity
