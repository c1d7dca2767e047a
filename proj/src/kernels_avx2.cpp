// AVX2 + FMA kernels. One __m256d holds two interleaved complex values.
// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernel_variants.hpp"

namespace lowdensity::simd::avx2 {
namespace {

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline double horizontal_max(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// re^2 + im^2 with separate roundings, matching the scalar reference.
inline double squared_modulus(const double* z) {
  const __m128d v = _mm_loadu_pd(z);
  const __m128d sq = _mm_mul_pd(v, v);
  return _mm_cvtsd_f64(_mm_add_sd(sq, _mm_unpackhi_pd(sq, sq)));
}

inline double sqrt_scalar(double v) {
  return _mm_cvtsd_f64(_mm_sqrt_sd(_mm_setzero_pd(), _mm_set_sd(v)));
}

}  // namespace

void dot_conj(const double* a, const double* b, std::size_t n, double* out) {
  __m256d re0 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd();
  __m256d re1 = _mm256_setzero_pd();
  __m256d im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(a + 2 * i);
    const __m256d b0 = _mm256_loadu_pd(b + 2 * i);
    const __m256d a1 = _mm256_loadu_pd(a + 2 * i + 4);
    const __m256d b1 = _mm256_loadu_pd(b + 2 * i + 4);
    // [ar*br, ai*bi] accumulates the real part, [ar*bi, ai*br] the imaginary.
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im0);
    re1 = _mm256_fmadd_pd(a1, b1, re1);
    im1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), im1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d a0 = _mm256_loadu_pd(a + 2 * i);
    const __m256d b0 = _mm256_loadu_pd(b + 2 * i);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im0);
  }
  const __m256d re_acc = _mm256_add_pd(re0, re1);
  // Imaginary lanes alternate +ar*bi, -ai*br.
  const __m256d im_acc =
      _mm256_mul_pd(_mm256_add_pd(im0, im1), _mm256_setr_pd(1.0, -1.0, 1.0, -1.0));
  double re = horizontal_sum(re_acc);
  double im = horizontal_sum(im_acc);
  if (i < n) {
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
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(x + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(x + 2 * i + 4);
    // hadd pairs (re^2, im^2) of both vectors into four squared moduli.
    const __m256d sq = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    acc = _mm256_add_pd(acc, _mm256_sqrt_pd(sq));
  }
  double sum = horizontal_sum(acc);
  for (; i < n; ++i) {
    sum += sqrt_scalar(squared_modulus(x + 2 * i));
  }
  return sum;
}

double abs_max(const double* x, std::size_t n) {
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(x + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(x + 2 * i + 4);
    const __m256d sq = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    best = _mm256_max_pd(best, sq);
  }
  double result = horizontal_max(best);
  for (; i < n; ++i) {
    const double sq = squared_modulus(x + 2 * i);
    if (sq > result) {
      result = sq;
    }
  }
  return sqrt_scalar(result);
}

double squared_norm(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(x + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(x + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    sum += squared_modulus(x + 2 * i);
  }
  return sum;
}

void correlate(const double* atoms, std::size_t rows, std::size_t cols, const double* r,
               double* out) {
  for (std::size_t j = 0; j < cols; ++j) {
    dot_conj(atoms + 2 * rows * j, r, rows, out + 2 * j);
  }
}

}  // namespace lowdensity::simd::avx2
