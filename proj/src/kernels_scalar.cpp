// Reference kernels. These define the semantics the SIMD variants are tested
// against; keep them plain.

#include <cmath>

#include "kernel_variants.hpp"

namespace lowdensity::simd::scalar {

void dot_conj(const double* a, const double* b, std::size_t n, double* out) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[2 * i];
    const double ai = a[2 * i + 1];
    const double br = b[2 * i];
    const double bi = b[2 * i + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  out[0] = re;
  out[1] = im;
}

double abs_sum(const double* x, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[2 * i];
    const double im = x[2 * i + 1];
    sum += std::sqrt(re * re + im * im);
  }
  return sum;
}

double abs_max(const double* x, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[2 * i];
    const double im = x[2 * i + 1];
    const double sq = re * re + im * im;
    if (sq > best) {
      best = sq;
    }
  }
  return std::sqrt(best);
}

double squared_norm(const double* x, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1];
  }
  return sum;
}

void correlate(const double* atoms, std::size_t rows, std::size_t cols, const double* r,
               double* out) {
  for (std::size_t j = 0; j < cols; ++j) {
    dot_conj(atoms + 2 * rows * j, r, rows, out + 2 * j);
  }
}

}  // namespace lowdensity::simd::scalar
