#include "lowdensity/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lowdensity/coherence.hpp"
#include "lowdensity/density.hpp"
#include "lowdensity/kernels.hpp"
#include "lowdensity/omp.hpp"

namespace lowdensity {

Matrix nullspace_basis(const Dictionary& a) {
  const Matrix& m = a.matrix();
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double largest = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > kNullspaceRelativeCutoff * largest) {
      ++rank;
    }
  }
  const Eigen::Index n = m.cols();
  return svd.matrixV().rightCols(n - rank);
}

namespace {

double delta_of(const Vector& v) {
  const std::span<const Complex> view{v.data(), static_cast<std::size_t>(v.size())};
  const double peak = simd::abs_max(view);
  return peak == 0.0 ? std::numeric_limits<double>::infinity() : simd::abs_sum(view) / peak;
}

// Coordinate-wise perturbation descent on delta(K c) over the coefficients c.
double refine(const Matrix& basis, Vector& coeffs, double current) {
  constexpr int kMaxSweeps = 400;
  constexpr int kMaxHalvings = 30;
  const Complex directions[] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  double step = 0.5 * coeffs.cwiseAbs().maxCoeff();
  int halvings = 0;
  for (int sweep = 0; sweep < kMaxSweeps && halvings < kMaxHalvings; ++sweep) {
    bool improved = false;
    for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
      for (const Complex& dir : directions) {
        const Complex saved = coeffs[j];
        coeffs[j] = saved + step * dir;
        const double candidate = delta_of(basis * coeffs);
        if (candidate < current) {
          current = candidate;
          improved = true;
        } else {
          coeffs[j] = saved;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
      ++halvings;
    }
  }
  return current;
}

}  // namespace

KernelProbeResult probe_kernel_density(const Dictionary& a, std::size_t trials, Rng& rng) {
  if (trials < 1) {
    throw Error(ErrorCode::InvalidArgument, "probe needs at least one trial");
  }
  const Matrix basis = nullspace_basis(a);
  if (basis.cols() == 0) {
    throw Error(ErrorCode::TrivialKernel, "dictionary has full column rank");
  }
  const double mu = coherence(a).mu;
  if (mu <= kTrivialCoherence) {
    throw Error(ErrorCode::TrivialCoherence, "kernel threshold undefined for zero coherence");
  }

  KernelProbeResult result;
  result.threshold = 1.0 + 1.0 / mu;
  result.trials = trials;
  result.kernel_dim = static_cast<std::size_t>(basis.cols());
  result.min_delta_found = std::numeric_limits<double>::infinity();
  Vector best_vector;

  Vector coeffs(basis.cols());
  for (std::size_t trial = 0; trial < trials; ++trial) {
    for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
      coeffs[j] = rng.complex_normal();
    }
    double value = delta_of(basis * coeffs);
    if (basis.cols() > 1) {
      value = refine(basis, coeffs, value);
    }
    if (value < result.min_delta_found) {
      result.min_delta_found = value;
      best_vector = basis * coeffs;
    }
  }
  const double peak =
      simd::abs_max({best_vector.data(), static_cast<std::size_t>(best_vector.size())});
  result.witness = Signal(best_vector / peak);
  return result;
}

double supports_up_to(std::size_t n, std::size_t k) {
  double total = 0.0;
  double binom = 1.0;  // C(n, j)
  for (std::size_t j = 0; j <= k && j <= n; ++j) {
    if (j > 0) {
      binom = binom * static_cast<double>(n - j + 1) / static_cast<double>(j);
    }
    total += binom;
    if (!std::isfinite(total)) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return total;
}

ExhaustiveRecovery exhaustive_sparse_recovery(const Dictionary& a, const Signal& y,
                                              std::size_t k) {
  if (y.dim() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "measurement length does not match dictionary rows");
  }
  if (k > a.rows()) {
    throw Error(ErrorCode::KOutOfRange, "k exceeds the number of rows");
  }
  const std::size_t n = a.cols();
  const std::size_t max_size = std::min(k, n);
  if (supports_up_to(n, max_size) > kMaxExhaustiveSupports) {
    throw Error(ErrorCode::TooLarge, "more than 1e7 supports for N=" + std::to_string(n) +
                                         ", k=" + std::to_string(k));
  }
  const double y_norm = std::sqrt(simd::squared_norm(y.view()));
  const double tie_tol = 1e-10 * (1.0 + y_norm);

  ExhaustiveRecovery best;
  best.coefficients = Vector(0);
  best.residual_norm = y_norm;  // empty support

  std::vector<std::size_t> combo;
  for (std::size_t size = 1; size <= max_size; ++size) {
    combo.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      combo[i] = i;
    }
    while (true) {
      try {
        const SupportSet support(combo, n);
        const LeastSquaresFit fit = least_squares_on_support(a, support, y.entries());
        const double residual =
            std::sqrt(simd::squared_norm({fit.residual.data(), a.rows()}));
        if (residual < best.residual_norm - tie_tol) {
          best.support = combo;
          best.coefficients = fit.coefficients;
          best.residual_norm = residual;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::RankDeficient) {
          throw;
        }
      }
      // Next combination in lexicographic order.
      std::size_t pos = size;
      while (pos > 0 && combo[pos - 1] == n - size + pos - 1) {
        --pos;
      }
      if (pos == 0) {
        break;
      }
      ++combo[pos - 1];
      for (std::size_t i = pos; i < size; ++i) {
        combo[i] = combo[i - 1] + 1;
      }
    }
  }
  return best;
}

}  // namespace lowdensity
