#pragma once

// Per-ISA kernel entry points. This header must stay free of inline library
// code: the SIMD translation units are compiled with extra ISA flags, and any
// inline function they instantiate could otherwise be merged into code paths
// that run on CPUs without those instructions.

#include <cstddef>

#define LOWDENSITY_DECLARE_KERNELS                                                      \
  void dot_conj(const double* a, const double* b, std::size_t n, double* out);           \
  double abs_sum(const double* x, std::size_t n);                                        \
  double abs_max(const double* x, std::size_t n);                                        \
  double squared_norm(const double* x, std::size_t n);                                   \
  void correlate(const double* atoms, std::size_t rows, std::size_t cols, const double* r, \
                 double* out);

namespace lowdensity::simd::scalar {
LOWDENSITY_DECLARE_KERNELS
}

namespace lowdensity::simd::avx2 {
LOWDENSITY_DECLARE_KERNELS
}

namespace lowdensity::simd::neon {
LOWDENSITY_DECLARE_KERNELS
}

#undef LOWDENSITY_DECLARE_KERNELS
