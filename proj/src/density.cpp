#include "lowdensity/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lowdensity/kernels.hpp"

namespace lowdensity {

double delta_density(const Signal& x) {
  const double peak = simd::abs_max(x.view());
  if (peak == 0.0) {
    return 0.0;
  }
  return simd::abs_sum(x.view()) / peak;
}

std::size_t sparsity(const Signal& x, double zero_tol) {
  if (!(zero_tol >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "zero tolerance must be nonnegative");
  }
  std::size_t count = 0;
  for (const Complex& v : x.view()) {
    if (std::abs(v) > zero_tol) {
      ++count;
    }
  }
  return count;
}

DensityReport density_report(const Signal& x) {
  DensityReport report;
  report.dim = x.dim();
  report.sparsity = sparsity(x);
  const double peak = simd::abs_max(x.view());
  if (peak == 0.0) {
    return report;
  }
  const double l1 = simd::abs_sum(x.view());
  const double l2_squared = simd::squared_norm(x.view());
  report.delta = l1 / peak;
  report.gamma = l2_squared / (peak * peak);
  report.sigma = l1 * l1 / l2_squared;
  return report;
}

Signal make_alpha_decaying(std::size_t n, double alpha) {
  if (n < 2) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha-decaying signals need N >= 2");
  }
  const double upper = 1.0 - 1.0 / static_cast<double>(n);
  if (!(alpha > 0.0 && alpha < upper)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha=" + std::to_string(alpha) +
                                                " outside (0, " + std::to_string(upper) + ")");
  }
  std::vector<double> values(n);
  double power = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = power;
    power *= alpha;
  }
  return Signal::from_real(values);
}

std::vector<std::size_t> descending_magnitude_order(const Signal& x) {
  std::vector<double> moduli(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    moduli[i] = std::abs(x[i]);
  }
  std::vector<std::size_t> order(x.dim());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return moduli[a] > moduli[b]; });
  return order;
}

Signal truncate_to_largest(const Signal& x, std::size_t k) {
  if (k > x.dim()) {
    throw Error(ErrorCode::KOutOfRange,
                "k=" + std::to_string(k) + " exceeds dimension " + std::to_string(x.dim()));
  }
  const std::vector<std::size_t> order = descending_magnitude_order(x);
  Vector kept = Vector::Zero(static_cast<Eigen::Index>(x.dim()));
  for (std::size_t r = 0; r < k; ++r) {
    kept[static_cast<Eigen::Index>(order[r])] = x[order[r]];
  }
  return Signal(std::move(kept));
}

Signal zero_entries(const Signal& x, const std::vector<std::size_t>& indices) {
  Vector out = x.entries();
  for (std::size_t i : indices) {
    if (i >= x.dim()) {
      throw Error(ErrorCode::InvalidSupport, "index out of range");
    }
    out[static_cast<Eigen::Index>(i)] = 0.0;
  }
  return Signal(std::move(out));
}

TriangleCounterexample triangle_counterexample(double alpha, double epsilon, std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 1)");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be finite and nonnegative");
  }
  if (n < 1) {
    throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
  }
  const auto size = static_cast<Eigen::Index>(n);
  Vector x(size);
  Vector z(size);
  double power = 1.0;
  for (Eigen::Index i = 0; i < size; ++i) {
    x[i] = -power;
    z[i] = power + epsilon;
    power *= alpha;
  }
  const Signal sx(x);
  const Signal sz(z);
  const Signal sum(x + z);
  return {delta_density(sx), delta_density(sz), delta_density(sum)};
}

}  // namespace lowdensity
