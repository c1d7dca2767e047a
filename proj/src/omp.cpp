#include "lowdensity/omp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lowdensity/kernels.hpp"

namespace lowdensity {
namespace {

double norm2(const Vector& v) {
  return std::sqrt(simd::squared_norm({v.data(), static_cast<std::size_t>(v.size())}));
}

}  // namespace

AtomSelection omp_select(const Dictionary& a, const Vector& residual, const SupportSet& selected) {
  if (selected.size() >= a.cols()) {
    throw Error(ErrorCode::EmptyRemaining, "every atom is already selected");
  }
  if (static_cast<std::size_t>(residual.size()) != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "residual length does not match dictionary rows");
  }
  std::vector<Complex> corr(a.cols());
  simd::correlate(a.matrix(), {residual.data(), a.rows()}, corr);
  AtomSelection best;
  bool found = false;
  for (std::size_t i = 0; i < a.cols(); ++i) {
    if (selected.contains(i)) {
      continue;
    }
    const double magnitude = std::abs(corr[i]);
    if (!found || magnitude > best.correlation) {
      best = {i, magnitude};
      found = true;
    }
  }
  return best;
}

LeastSquaresFit least_squares_on_support(const Dictionary& a, const SupportSet& support,
                                         const Vector& y) {
  if (static_cast<std::size_t>(y.size()) != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "measurement length does not match dictionary rows");
  }
  if (support.empty()) {
    return {Vector(0), y};
  }
  if (support.size() > a.rows()) {
    throw Error(ErrorCode::RankDeficient, "support larger than the number of rows");
  }
  const Matrix sub = a.restrict(support);
  Eigen::HouseholderQR<Matrix> qr(sub);
  const auto k = static_cast<Eigen::Index>(support.size());
  // A_S and R share singular values.
  const Matrix r = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Matrix> svd(r);
  const double sigma_min = svd.singularValues()(k - 1);
  if (sigma_min < kRankTolerance) {
    throw Error(ErrorCode::RankDeficient,
                "smallest singular value " + std::to_string(sigma_min) + " of A_S");
  }
  LeastSquaresFit fit;
  fit.coefficients = qr.solve(y);
  fit.residual = y - sub * fit.coefficients;
  return fit;
}

Signal OmpTrace::estimate(std::size_t n) const {
  Vector full = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < support.size(); ++k) {
    full[static_cast<Eigen::Index>(support.indices()[k])] = coefficients[static_cast<Eigen::Index>(k)];
  }
  return Signal(std::move(full));
}

OmpTrace omp_run(const Dictionary& a, const Signal& y, std::size_t t_max,
                 std::optional<double> residual_tol) {
  const std::size_t limit = std::min(a.rows(), a.cols());
  if (t_max < 1 || t_max > limit) {
    throw Error(ErrorCode::TMaxOutOfRange, "t_max=" + std::to_string(t_max) +
                                               " outside [1, " + std::to_string(limit) + "]");
  }
  if (y.dim() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "measurement length does not match dictionary rows");
  }
  if (residual_tol && !(*residual_tol >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "residual tolerance must be nonnegative");
  }

  OmpTrace trace;
  trace.coefficients = Vector(0);
  trace.residual = y.entries();
  trace.residual_norms.push_back(norm2(trace.residual));

  for (std::size_t t = 1; t <= t_max; ++t) {
    if (residual_tol && trace.residual_norms.back() <= *residual_tol) {
      break;
    }
    const AtomSelection pick = omp_select(a, trace.residual, trace.support);
    if (pick.correlation <= kCorrelationFloor) {
      break;
    }
    trace.support.insert(pick.index, a.cols());
    LeastSquaresFit fit = least_squares_on_support(a, trace.support, y.entries());
    trace.coefficients = std::move(fit.coefficients);
    trace.residual = std::move(fit.residual);
    trace.selected.push_back(pick.index);
    trace.correlations.push_back(pick.correlation);
    trace.residual_norms.push_back(norm2(trace.residual));
  }
  return trace;
}

}  // namespace lowdensity
