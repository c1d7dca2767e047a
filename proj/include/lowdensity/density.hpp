#pragma once

#include <cstddef>
#include <vector>

#include "lowdensity/types.hpp"

namespace lowdensity {

/// Density measures of one signal. gamma and sigma are report-only.
struct DensityReport {
  double delta = 0.0;          // ||x||_1 / ||x||_inf
  double gamma = 0.0;          // ||x||_2^2 / ||x||_inf^2
  double sigma = 0.0;          // ||x||_1^2 / ||x||_2^2
  std::size_t sparsity = 0;    // ||x||_0
  std::size_t dim = 0;
};

/// ||x||_1 / ||x||_inf, and exactly 0 for the all-zero signal. Lies in [0, dim].
double delta_density(const Signal& x);

/// Number of entries with modulus strictly greater than `zero_tol`.
std::size_t sparsity(const Signal& x, double zero_tol = 0.0);

DensityReport density_report(const Signal& x);

/// Real signal with x_i = alpha^i (zero-based). Requires N >= 2 and
/// 0 < alpha < 1 - 1/N, else AlphaOutOfRange.
Signal make_alpha_decaying(std::size_t n, double alpha);

/// Indices sorted by descending modulus; equal moduli keep ascending index.
std::vector<std::size_t> descending_magnitude_order(const Signal& x);

/// Keeps the k largest-modulus entries (lowest index wins ties) and zeroes the
/// rest. KOutOfRange unless 0 <= k <= dim.
Signal truncate_to_largest(const Signal& x, std::size_t k);

/// Copy of `x` with the listed entries set to zero.
Signal zero_entries(const Signal& x, const std::vector<std::size_t>& indices);

struct TriangleCounterexample {
  double delta_x = 0.0;
  double delta_z = 0.0;
  double delta_sum = 0.0;
};

/// Builds x_i = -alpha^i and z_i = alpha^i + epsilon (i = 0..N-1) and returns
/// delta(x), delta(z) and delta(x + z), all evaluated numerically. For
/// epsilon > 0 the sum is the constant vector epsilon * 1, so delta_sum = N.
TriangleCounterexample triangle_counterexample(double alpha, double epsilon, std::size_t n);

}  // namespace lowdensity
