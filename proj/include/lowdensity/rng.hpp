#pragma once

#include <cstdint>
#include <random>

#include "lowdensity/types.hpp"

namespace lowdensity {

/// Deterministic generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; every derived distribution below is
/// implemented here (the std:: distributions are implementation-defined), so a
/// seed reproduces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Per-trial generator: seeded with seed() + index.
  Rng derive(std::uint64_t index) const { return Rng(seed_ + index); }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer on [0, n). Requires n > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Standard normal via Box-Muller.
  double normal();
  /// Circularly symmetric complex Gaussian with E|z|^2 = 1.
  Complex complex_normal();
  /// Uniformly distributed unit-modulus complex number.
  Complex unit_phase();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lowdensity
