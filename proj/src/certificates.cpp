#include "lowdensity/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lowdensity/coherence.hpp"
#include "lowdensity/density.hpp"
#include "lowdensity/kernels.hpp"

namespace lowdensity {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_mu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::NonPositiveMu, "coherence must be positive, got " + std::to_string(mu));
  }
}

double positive_part(double v) { return std::max(v, 0.0); }

}  // namespace

KernelCertificate kernel_certificate(const Dictionary& a, const Signal& x) {
  if (x.dim() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "signal length does not match dictionary width");
  }
  return kernel_certificate(coherence(a).mu, x);
}

KernelCertificate kernel_certificate(double mu, const Signal& x) {
  KernelCertificate cert;
  cert.delta = delta_density(x);
  if (cert.delta == 0.0) {
    throw Error(ErrorCode::ZeroSignal, "kernel certificate needs a nonzero signal");
  }
  cert.mu = mu;
  cert.sparsity = sparsity(x);
  if (mu <= kTrivialCoherence) {
    cert.trivial_coherence = true;
    cert.threshold = kInf;
    cert.certified_nonzero = true;
    cert.classical_certified = true;
    return cert;
  }
  cert.threshold = 1.0 + 1.0 / mu;
  cert.certified_nonzero = cert.delta < cert.threshold;
  cert.classical_certified = static_cast<double>(cert.sparsity) < cert.threshold;
  return cert;
}

UncertaintyReport uncertainty_check(const Dictionary& a, const Dictionary& b, const Signal& x,
                                    const Signal& z) {
  if (a.rows() != b.rows() || x.dim() != a.cols() || z.dim() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "incompatible dictionary/signal dimensions");
  }
  UncertaintyReport out;
  out.delta_x = delta_density(x);
  out.delta_z = delta_density(z);
  if (out.delta_x == 0.0 || out.delta_z == 0.0) {
    throw Error(ErrorCode::ZeroSignal, "uncertainty relation needs nonzero x and z");
  }
  out.mu_a = coherence(a).mu;
  out.mu_b = coherence(b).mu;
  out.mu_m = mutual_coherence(a, b).mu_m;
  out.lhs = positive_part(1.0 - out.mu_a * (out.delta_x - 1.0)) *
            positive_part(1.0 - out.mu_b * (out.delta_z - 1.0));
  out.rhs = out.delta_x * out.delta_z * out.mu_m * out.mu_m;
  out.residual_gap = out.rhs - out.lhs;
  const Vector ax = a.apply(x);
  const Vector diff = ax - b.apply(z);
  out.measurement_norm = std::sqrt(simd::squared_norm({ax.data(), static_cast<std::size_t>(ax.size())}));
  out.constraint_residual =
      std::sqrt(simd::squared_norm({diff.data(), static_cast<std::size_t>(diff.size())}));
  return out;
}

double onb_uncertainty_bound(double mu_m) {
  if (!(mu_m > 0.0 && mu_m <= 1.0)) {
    throw Error(ErrorCode::NonPositiveMu, "mutual coherence must lie in (0, 1]");
  }
  return 1.0 / (mu_m * mu_m);
}

double classical_omp_threshold(double mu) {
  require_positive_mu(mu);
  return 0.5 * (1.0 + 1.0 / mu);
}

double alpha_decay_iteration_bound(double alpha, double mu) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 1)");
  }
  require_positive_mu(mu);
  return 2.0 + 1.0 / mu - 2.0 / (1.0 - alpha);
}

GuaranteeReport omp_guarantee(const Dictionary& a, const Signal& x, std::size_t t_max) {
  if (x.dim() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "signal length does not match dictionary width");
  }
  return omp_guarantee(coherence(a).mu, x, t_max);
}

GuaranteeReport omp_guarantee(double mu, const Signal& x, std::size_t t_max) {
  if (t_max < 1 || t_max > x.dim()) {
    throw Error(ErrorCode::TMaxOutOfRange, "t_max=" + std::to_string(t_max) +
                                               " outside [1, " + std::to_string(x.dim()) + "]");
  }
  GuaranteeReport report;
  report.t_max = t_max;
  report.mu = mu;
  const std::size_t nonzeros = sparsity(x);

  if (mu <= kTrivialCoherence) {
    // Orthonormal atoms: correlations equal the coefficients themselves.
    report.trivial_coherence = true;
    report.C = kInf;
    report.classical_threshold = kInf;
    report.iteration_bound_ok = true;
    report.classical_certified = t_max == nonzeros;
  } else {
    report.C = 0.5 * (1.0 + 1.0 / mu);
    report.classical_threshold = report.C;
    report.iteration_bound_ok = static_cast<double>(t_max) < 1.0 + 1.0 / mu;
    report.classical_certified =
        t_max == nonzeros && static_cast<double>(nonzeros) < report.classical_threshold;
  }

  const std::vector<std::size_t> order = descending_magnitude_order(x);
  Vector tail = x.entries();
  bool all_ok = true;
  report.per_iteration.reserve(t_max);
  for (std::size_t t = 1; t <= t_max; ++t) {
    if (t > 1) {
      tail[static_cast<Eigen::Index>(order[t - 2])] = 0.0;
    }
    GuaranteeStep step;
    step.t = t;
    step.tail_delta = delta_density(Signal(tail));
    step.threshold_t =
        report.trivial_coherence ? kInf : report.C - 0.5 * static_cast<double>(t - 1);
    step.ok = step.tail_delta < step.threshold_t;
    all_ok = all_ok && step.ok;
    report.per_iteration.push_back(step);
  }
  report.certified = report.iteration_bound_ok && all_ok;
  report.per_iteration_heuristic = !report.certified;
  return report;
}

}  // namespace lowdensity
