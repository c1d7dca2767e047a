#include "lowdensity/kernels.hpp"

#include <cstdlib>
#include <string_view>

#include "kernel_variants.hpp"

namespace lowdensity::simd {
namespace {

const KernelTable kScalar{"scalar",         scalar::dot_conj,     scalar::abs_sum,
                          scalar::abs_max,  scalar::squared_norm, scalar::correlate};

#if defined(LOWDENSITY_HAVE_AVX2)
const KernelTable kAvx2{"avx2",         avx2::dot_conj,     avx2::abs_sum,
                        avx2::abs_max,  avx2::squared_norm, avx2::correlate};

bool cpu_has_avx2() noexcept {
#if defined(__GNUC__) || defined(__clang__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}
#endif

#if defined(LOWDENSITY_HAVE_NEON)
const KernelTable kNeon{"neon",         neon::dot_conj,     neon::abs_sum,
                        neon::abs_max,  neon::squared_norm, neon::correlate};
#endif

const KernelTable* select_automatic() noexcept {
  if (const KernelTable* t = avx2_kernels()) {
    return t;
  }
  if (const KernelTable* t = neon_kernels()) {
    return t;
  }
  return &kScalar;
}

const KernelTable* select_initial() noexcept {
  if (const char* env = std::getenv("LOWDENSITY_KERNELS")) {
    const std::string_view requested(env);
    if (requested == "scalar") {
      return &kScalar;
    }
    if (requested == "avx2" && avx2_kernels() != nullptr) {
      return avx2_kernels();
    }
    if (requested == "neon" && neon_kernels() != nullptr) {
      return neon_kernels();
    }
  }
  return select_automatic();
}

const KernelTable*& active_slot() noexcept {
  static const KernelTable* active = select_initial();
  return active;
}

const double* raw(const Complex* p) noexcept { return reinterpret_cast<const double*>(p); }

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch, "kernel operands differ in length");
  }
}

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

const KernelTable* avx2_kernels() noexcept {
#if defined(LOWDENSITY_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() noexcept {
#if defined(LOWDENSITY_HAVE_NEON)
  return &kNeon;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept { return *active_slot(); }

ScopedKernelOverride::ScopedKernelOverride(const KernelTable& table) noexcept
    : previous_(active_slot()) {
  active_slot() = &table;
}

ScopedKernelOverride::~ScopedKernelOverride() { active_slot() = previous_; }

Complex dot_conj(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_size(a.size(), b.size());
  double out[2];
  active_kernels().dot_conj(raw(a.data()), raw(b.data()), a.size(), out);
  return {out[0], out[1]};
}

double abs_sum(std::span<const Complex> x) {
  return active_kernels().abs_sum(raw(x.data()), x.size());
}

double abs_max(std::span<const Complex> x) {
  return active_kernels().abs_max(raw(x.data()), x.size());
}

double squared_norm(std::span<const Complex> x) {
  return active_kernels().squared_norm(raw(x.data()), x.size());
}

void correlate(const Matrix& atoms, std::span<const Complex> r, std::span<Complex> out) {
  require_same_size(static_cast<std::size_t>(atoms.rows()), r.size());
  require_same_size(static_cast<std::size_t>(atoms.cols()), out.size());
  active_kernels().correlate(raw(atoms.data()), r.size(), out.size(), raw(r.data()),
                             reinterpret_cast<double*>(out.data()));
}

}  // namespace lowdensity::simd
