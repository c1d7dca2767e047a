#pragma once

// Inner-loop arithmetic on interleaved complex<double> buffers. A scalar
// reference implementation is always available; SIMD variants (AVX2+FMA on
// x86-64, NEON on AArch64) are compiled when the target supports them and the
// active table is chosen once at runtime from CPU capabilities.
//
// The environment variable LOWDENSITY_KERNELS=scalar|avx2|neon overrides the
// automatic choice (unknown or unavailable values fall back to automatic).

#include <cstddef>
#include <span>
#include <string_view>

#include "lowdensity/types.hpp"

namespace lowdensity::simd {

/// Raw kernel entry points. Buffers are interleaved (re, im) pairs; `n` counts
/// complex elements.
struct KernelTable {
  std::string_view name;
  /// out = sum_i conj(a_i) * b_i
  void (*dot_conj)(const double* a, const double* b, std::size_t n, double* out);
  /// sum_i |x_i|
  double (*abs_sum)(const double* x, std::size_t n);
  /// max_i |x_i|, 0 for n == 0
  double (*abs_max)(const double* x, std::size_t n);
  /// sum_i |x_i|^2
  double (*squared_norm)(const double* x, std::size_t n);
  /// out_j = a_j^H r for the `cols` column-major atoms of length `rows`
  void (*correlate)(const double* atoms, std::size_t rows, std::size_t cols, const double* r,
                    double* out);
};

const KernelTable& scalar_kernels() noexcept;
/// nullptr when not compiled in or not supported by the running CPU.
const KernelTable* avx2_kernels() noexcept;
const KernelTable* neon_kernels() noexcept;

/// Table used by the library; selected on first call.
const KernelTable& active_kernels() noexcept;

/// Replaces the active table for the lifetime of the guard. Not thread-safe;
/// meant for equivalence tests and benchmarks.
class ScopedKernelOverride {
 public:
  explicit ScopedKernelOverride(const KernelTable& table) noexcept;
  ~ScopedKernelOverride();
  ScopedKernelOverride(const ScopedKernelOverride&) = delete;
  ScopedKernelOverride& operator=(const ScopedKernelOverride&) = delete;

 private:
  const KernelTable* previous_;
};

// Typed wrappers over the active table.

Complex dot_conj(std::span<const Complex> a, std::span<const Complex> b);
double abs_sum(std::span<const Complex> x);
double abs_max(std::span<const Complex> x);
double squared_norm(std::span<const Complex> x);
/// out[j] = a_j^H r; `out.size()` must equal the number of atoms.
void correlate(const Matrix& atoms, std::span<const Complex> r, std::span<Complex> out);

}  // namespace lowdensity::simd
