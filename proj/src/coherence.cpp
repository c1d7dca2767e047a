#include "lowdensity/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lowdensity/density.hpp"
#include "lowdensity/kernels.hpp"

namespace lowdensity {

Matrix gram_matrix(const Dictionary& a) {
  const auto n = static_cast<Eigen::Index>(a.cols());
  Matrix gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = simd::dot_conj(a.atom(static_cast<std::size_t>(i)),
                                a.atom(static_cast<std::size_t>(i)));
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex g = simd::dot_conj(a.atom(static_cast<std::size_t>(i)),
                                       a.atom(static_cast<std::size_t>(j)));
      gram(i, j) = g;
      gram(j, i) = std::conj(g);
    }
  }
  return gram;
}

CoherenceReport coherence(const Dictionary& a) {
  CoherenceReport report;
  const std::size_t n = a.cols();
  if (n < 2) {
    report.single_column = true;
    return report;
  }
  report.argmax_pair = {0, 1};
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double magnitude = std::abs(simd::dot_conj(a.atom(i), a.atom(j)));
      if (magnitude > best) {
        best = magnitude;
        report.argmax_pair = {i, j};
      }
    }
  }
  report.mu = best;
  return report;
}

MutualCoherenceReport mutual_coherence(const Dictionary& a, const Dictionary& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::RowMismatch, std::to_string(a.rows()) + " rows vs " +
                                            std::to_string(b.rows()) + " rows");
  }
  MutualCoherenceReport report;
  double best = -1.0;
  for (std::size_t i = 0; i < a.cols(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      const double magnitude = std::abs(simd::dot_conj(a.atom(i), b.atom(j)));
      if (magnitude > best) {
        best = magnitude;
        report.argmax_pair = {i, j};
      }
    }
  }
  report.mu_m = best;
  return report;
}

namespace {

// ||A^H v||_inf for a length-M vector v.
double correlation_peak(const Dictionary& a, const Vector& v) {
  std::vector<Complex> corr(a.cols());
  simd::correlate(a.matrix(), {v.data(), static_cast<std::size_t>(v.size())}, corr);
  return simd::abs_max(corr);
}

}  // namespace

LinfDensityBounds linf_density_bounds(const Dictionary& a, const Signal& x) {
  if (x.dim() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "signal length " + std::to_string(x.dim()) +
                                                  " != dictionary width " +
                                                  std::to_string(a.cols()));
  }
  return linf_density_bounds(a, x, coherence(a).mu);
}

LinfDensityBounds linf_density_bounds(const Dictionary& a, const Signal& x, double mu) {
  if (x.dim() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "signal length " + std::to_string(x.dim()) +
                                                  " != dictionary width " +
                                                  std::to_string(a.cols()));
  }
  const double peak = simd::abs_max(x.view());
  if (peak == 0.0) {
    throw Error(ErrorCode::ZeroSignal, "bounds need a nonzero signal");
  }
  LinfDensityBounds out;
  out.mu = mu;
  out.delta = delta_density(x);
  out.lower = 1.0 - mu * (out.delta - 1.0);
  out.upper = 1.0 + mu * (out.delta - 1.0);
  out.ratio = correlation_peak(a, a.apply(x)) / peak;
  return out;
}

CrossCoherenceBound cross_coherence_bound(const Dictionary& a, const Dictionary& b,
                                          const Signal& z) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "dictionaries differ in row count");
  }
  if (z.dim() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "signal length does not match B");
  }
  CrossCoherenceBound out;
  out.lhs = correlation_peak(a, b.apply(z));
  out.rhs = mutual_coherence(a, b).mu_m * simd::abs_sum(z.view());
  return out;
}

GramConditioningBound gram_conditioning_bound(const Dictionary& a, const SupportSet& support) {
  return gram_conditioning_bound(a, support, coherence(a).mu);
}

GramConditioningBound gram_conditioning_bound(const Dictionary& a, const SupportSet& support,
                                              double mu) {
  if (support.empty()) {
    throw Error(ErrorCode::EmptySupport, "support must contain at least one index");
  }
  const Matrix sub = a.restrict(support);
  const Matrix gram = sub.adjoint() * sub;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  GramConditioningBound out;
  out.bound = std::max(0.0, 1.0 - mu * (static_cast<double>(support.size()) - 1.0));
  out.lambda_min = solver.eigenvalues().minCoeff();
  return out;
}

}  // namespace lowdensity
