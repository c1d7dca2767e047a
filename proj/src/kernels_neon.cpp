// AArch64 NEON kernels. One float64x2_t holds one complex value.

#include <arm_neon.h>

#include "kernel_variants.hpp"

namespace lowdensity::simd::neon {
namespace {

inline float64x2_t squared_parts(const double* z) {
  const float64x2_t v = vld1q_f64(z);
  return vmulq_f64(v, v);
}

}  // namespace

void dot_conj(const double* a, const double* b, std::size_t n, double* out) {
  float64x2_t re_acc = vdupq_n_f64(0.0);
  float64x2_t im_acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t av = vld1q_f64(a + 2 * i);
    const float64x2_t bv = vld1q_f64(b + 2 * i);
    re_acc = vfmaq_f64(re_acc, av, bv);                  // [ar*br, ai*bi]
    im_acc = vfmaq_f64(im_acc, av, vextq_f64(bv, bv, 1));  // [ar*bi, ai*br]
  }
  out[0] = vaddvq_f64(re_acc);
  out[1] = vgetq_lane_f64(im_acc, 0) - vgetq_lane_f64(im_acc, 1);
}

double abs_sum(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // Pairwise add gives the two squared moduli side by side.
    const float64x2_t sq = vpaddq_f64(squared_parts(x + 2 * i), squared_parts(x + 2 * i + 2));
    acc = vaddq_f64(acc, vsqrtq_f64(sq));
  }
  double sum = vaddvq_f64(acc);
  if (i < n) {
    sum += vget_lane_f64(vsqrt_f64(vdup_n_f64(vaddvq_f64(squared_parts(x + 2 * i)))), 0);
  }
  return sum;
}

double abs_max(const double* x, std::size_t n) {
  float64x2_t best = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t sq = vpaddq_f64(squared_parts(x + 2 * i), squared_parts(x + 2 * i + 2));
    best = vmaxq_f64(best, sq);
  }
  double result = vmaxvq_f64(best);
  if (i < n) {
    const double sq = vaddvq_f64(squared_parts(x + 2 * i));
    if (sq > result) {
      result = sq;
    }
  }
  return vget_lane_f64(vsqrt_f64(vdup_n_f64(result)), 0);
}

double squared_norm(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(x + 2 * i);
    acc = vfmaq_f64(acc, v, v);
  }
  return vaddvq_f64(acc);
}

void correlate(const double* atoms, std::size_t rows, std::size_t cols, const double* r,
               double* out) {
  for (std::size_t j = 0; j < cols; ++j) {
    dot_conj(atoms + 2 * rows * j, r, rows, out + 2 * j);
  }
}

}  // namespace lowdensity::simd::neon
