#include <doctest.h>

#include <cmath>
#include <vector>

#include "lowdensity/kernels.hpp"
#include "lowdensity/rng.hpp"
#include "oracles.hpp"

using namespace lowdensity;

namespace {

std::vector<Complex> random_buffer(std::size_t n, Rng& rng) {
  std::vector<Complex> v(n);
  for (Complex& c : v) {
    c = rng.complex_normal() * (1.0 + 10.0 * rng.uniform());
  }
  return v;
}

std::vector<const simd::KernelTable*> simd_tables() {
  std::vector<const simd::KernelTable*> out;
  if (const auto* t = simd::avx2_kernels()) out.push_back(t);
  if (const auto* t = simd::neon_kernels()) out.push_back(t);
  return out;
}

const double* raw(const std::vector<Complex>& v) { return reinterpret_cast<const double*>(v.data()); }

}  // namespace

TEST_CASE("scalar kernels match the oracle") {
  Rng rng(11);
  const auto& k = simd::scalar_kernels();
  for (std::size_t n : {0u, 1u, 2u, 5u, 17u, 64u}) {
    const auto a = random_buffer(n, rng);
    const auto b = random_buffer(n, rng);
    const oracle::cvec oa(a.begin(), a.end());
    const oracle::cvec ob(b.begin(), b.end());
    double out[2];
    k.dot_conj(raw(a), raw(b), n, out);
    const Complex want = oracle::inner(oa, ob);
    CHECK(std::abs(Complex(out[0], out[1]) - want) <= 1e-12 * (1.0 + std::abs(want)) * n);
    CHECK(k.abs_sum(raw(a), n) == doctest::Approx(oracle::l1(oa)).epsilon(1e-13));
    CHECK(k.abs_max(raw(a), n) == doctest::Approx(oracle::linf(oa)).epsilon(1e-15));
    CHECK(k.squared_norm(raw(a), n) == doctest::Approx(oracle::l2sq(oa)).epsilon(1e-13));
  }
}

TEST_CASE("SIMD kernels agree with the scalar reference") {
  const auto tables = simd_tables();
  if (tables.empty()) {
    MESSAGE("no SIMD kernels on this CPU; equivalence not exercised");
    return;
  }
  Rng rng(12);
  const auto& ref = simd::scalar_kernels();
  for (const simd::KernelTable* t : tables) {
    CAPTURE(t->name);
    for (std::size_t n = 0; n <= 67; ++n) {
      CAPTURE(n);
      const auto a = random_buffer(n, rng);
      const auto b = random_buffer(n, rng);
      double want[2];
      double got[2];
      ref.dot_conj(raw(a), raw(b), n, want);
      t->dot_conj(raw(a), raw(b), n, got);
      const double scale = 1.0 + std::sqrt(ref.squared_norm(raw(a), n) * ref.squared_norm(raw(b), n));
      CHECK(std::abs(got[0] - want[0]) <= 1e-13 * scale);
      CHECK(std::abs(got[1] - want[1]) <= 1e-13 * scale);

      const double l1 = ref.abs_sum(raw(a), n);
      CHECK(std::abs(t->abs_sum(raw(a), n) - l1) <= 1e-14 * (1.0 + l1));
      // max of identically computed moduli is exact
      CHECK(t->abs_max(raw(a), n) == ref.abs_max(raw(a), n));
      const double sq = ref.squared_norm(raw(a), n);
      CHECK(std::abs(t->squared_norm(raw(a), n) - sq) <= 1e-14 * (1.0 + sq));
    }
    for (std::size_t rows : {1u, 3u, 8u, 13u}) {
      const std::size_t cols = 7;
      const auto atoms = random_buffer(rows * cols, rng);
      const auto r = random_buffer(rows, rng);
      std::vector<Complex> want(cols);
      std::vector<Complex> got(cols);
      ref.correlate(raw(atoms), rows, cols, raw(r), reinterpret_cast<double*>(want.data()));
      t->correlate(raw(atoms), rows, cols, raw(r), reinterpret_cast<double*>(got.data()));
      for (std::size_t j = 0; j < cols; ++j) {
        CHECK(std::abs(got[j] - want[j]) <= 1e-12 * (1.0 + std::abs(want[j])));
      }
    }
  }
}

TEST_CASE("ScopedKernelOverride swaps and restores the active table") {
  const auto& before = simd::active_kernels();
  {
    simd::ScopedKernelOverride guard(simd::scalar_kernels());
    CHECK(simd::active_kernels().name == "scalar");
    const std::vector<Complex> v = {{3.0, 4.0}, {0.0, -1.0}};
    CHECK(simd::abs_sum(v) == doctest::Approx(6.0));
    CHECK(simd::abs_max(v) == 5.0);
    CHECK(simd::squared_norm(v) == doctest::Approx(26.0));
    CHECK(simd::dot_conj(v, v) == Complex(26.0, 0.0));
  }
  CHECK(&simd::active_kernels() == &before);
}

TEST_CASE("empty buffers") {
  const std::vector<Complex> empty;
  CHECK(simd::abs_sum(empty) == 0.0);
  CHECK(simd::abs_max(empty) == 0.0);
  CHECK(simd::squared_norm(empty) == 0.0);
  CHECK(simd::dot_conj(empty, empty) == Complex(0.0, 0.0));
}
