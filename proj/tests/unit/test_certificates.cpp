#include <doctest.h>

#include <cmath>
#include <numeric>

#include "convert.hpp"
#include "lowdensity/certificates.hpp"
#include "lowdensity/coherence.hpp"
#include "lowdensity/core.hpp"
#include "lowdensity/density.hpp"
#include "lowdensity/omp.hpp"
#include "lowdensity/rng.hpp"
#include "oracles.hpp"

using namespace lowdensity;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

Dictionary tight_example() {
  Matrix m = Matrix::Zero(2, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(0, 2) = m(1, 2) = 1.0 / std::sqrt(2.0);
  return make_dictionary(m, false);
}

Dictionary i64_h64() { return concat_dictionaries(identity_dictionary(64), hadamard_dictionary(64)); }

Signal constant_modulus(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(idx[i], idx[i + rng.uniform_index(n - i)]);
    v[static_cast<Eigen::Index>(idx[i])] = rng.unit_phase();
  }
  return Signal(v);
}

// Entries with moduli alpha^j (j = 0..k-1) on a random support with random phases.
Signal separated(std::size_t n, std::size_t k, double alpha, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(idx[i], idx[i + rng.uniform_index(n - i)]);
    v[static_cast<Eigen::Index>(idx[i])] = std::pow(alpha, static_cast<double>(i)) * rng.unit_phase();
  }
  return Signal(v);
}

}  // namespace

TEST_CASE("kernel_certificate: the tight example sits exactly on the threshold") {
  const Dictionary a = tight_example();
  const Signal x{1.0, 1.0, -std::sqrt(2.0)};
  CHECK(a.apply(x).norm() <= 1e-15);
  const KernelCertificate c = kernel_certificate(a, x);
  CHECK(c.delta == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-15));
  CHECK(c.threshold == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-15));
  CHECK_FALSE(c.certified_nonzero);
}

TEST_CASE("kernel_certificate examples") {
  const Dictionary a = tight_example();
  const KernelCertificate one = kernel_certificate(a, Signal{0.0, 0.0, 2.0});
  CHECK(one.delta == 1.0);
  CHECK(one.certified_nonzero);

  // dense alpha-decaying signal certified despite full support
  const Dictionary ih = concat_dictionaries(identity_dictionary(4), hadamard_dictionary(4));
  const double alpha_limit = 1.0 - 1.0 / (1.0 + 1.0 / 0.5);
  const KernelCertificate dense = kernel_certificate(ih, make_alpha_decaying(8, 0.9 * alpha_limit));
  CHECK(dense.sparsity == 8);
  CHECK(dense.certified_nonzero);
  CHECK_FALSE(dense.classical_certified);

  const KernelCertificate onb = kernel_certificate(identity_dictionary(3), Signal{1.0, 1.0, 1.0});
  CHECK(onb.trivial_coherence);
  CHECK(onb.certified_nonzero);
  CHECK(std::isinf(onb.threshold));

  CHECK(code_of([&] { kernel_certificate(a, Signal::zeros(3)); }) == ErrorCode::ZeroSignal);
  CHECK(code_of([&] { kernel_certificate(a, Signal::zeros(2)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("property: certified signals are never in the kernel; classical implies delta") {
  Rng rng(31);
  int certified = 0;
  for (int trial = 0; certified < 1000; ++trial) {
    REQUIRE(trial < 100000);
    const Dictionary a = random_unit_dictionary(6, 10, rng);
    const std::size_t k = 1 + rng.uniform_index(3);
    const Signal x = rng.uniform() < 0.5 ? separated(10, k, 0.3 * rng.uniform() + 0.01, rng)
                                         : constant_modulus(10, k, rng);
    const KernelCertificate c = kernel_certificate(a, x);
    if (c.classical_certified) {
      REQUIRE(c.certified_nonzero);
    }
    if (c.certified_nonzero) {
      ++certified;
      const double ax = std::sqrt(oracle::l2sq(oracle::apply(testutil::to_cmat(a), testutil::to_cvec(x))));
      REQUIRE(ax > 1e-9 * x.entries().norm());
    }
  }
}

TEST_CASE("uncertainty_check examples") {
  const Dictionary i4 = identity_dictionary(4);
  const Dictionary h4 = hadamard_dictionary(4);
  Vector e1 = Vector::Zero(4);
  e1[0] = 1.0;
  const Signal z(e1);
  const Signal x(h4.apply(z));
  const UncertaintyReport r = uncertainty_check(i4, h4, x, z);
  CHECK(r.delta_x == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(r.delta_z == 1.0);
  CHECK(r.mu_a == 0.0);
  CHECK(r.mu_b == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r.mu_m == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.applies());
  CHECK(r.holds());

  const UncertaintyReport same = uncertainty_check(i4, i4, z, z);
  CHECK(same.lhs == 1.0);
  CHECK(same.rhs == 1.0);
  CHECK(same.mu_m == 1.0);

  CHECK(code_of([&] { uncertainty_check(i4, identity_dictionary(3), z, Signal::zeros(3)); }) ==
        ErrorCode::DimensionMismatch);

  const UncertaintyReport off = uncertainty_check(i4, h4, z, z);
  CHECK_FALSE(off.applies());
}

TEST_CASE("property: uncertainty relation on random ONB pairs") {
  Rng rng(47);
  for (int trial = 0; trial < 500; ++trial) {
    const Dictionary a = random_orthonormal_basis(8, rng);
    const Dictionary b = random_orthonormal_basis(8, rng);
    Vector zv = Vector::Zero(8);
    const std::size_t k = 1 + rng.uniform_index(8);
    for (std::size_t i = 0; i < k; ++i) zv[static_cast<Eigen::Index>(rng.uniform_index(8))] = rng.complex_normal();
    if (zv.norm() == 0.0) zv[0] = 1.0;
    const Signal z(zv);
    const Signal x(a.matrix().adjoint() * b.apply(z));
    const UncertaintyReport r = uncertainty_check(a, b, x, z);
    REQUIRE(r.constraint_residual <= 1e-12 * (1.0 + r.measurement_norm));
    REQUIRE(r.holds(1e-9));
    // orthonormal pair specialization
    REQUIRE(r.delta_x * r.delta_z >= onb_uncertainty_bound(r.mu_m) - 1e-9);
  }
}

TEST_CASE("onb_uncertainty_bound and closed forms") {
  CHECK(onb_uncertainty_bound(0.5) == doctest::Approx(4.0));
  CHECK(onb_uncertainty_bound(1.0) == 1.0);
  CHECK(code_of([] { onb_uncertainty_bound(0.0); }) == ErrorCode::NonPositiveMu);
  CHECK(code_of([] { onb_uncertainty_bound(1.5); }) == ErrorCode::NonPositiveMu);

  CHECK(classical_omp_threshold(0.125) == 4.5);
  CHECK(classical_omp_threshold(1.0) == 1.0);
  CHECK(classical_omp_threshold(0.5) == 1.5);
  CHECK(code_of([] { classical_omp_threshold(0.0); }) == ErrorCode::NonPositiveMu);

  CHECK(alpha_decay_iteration_bound(0.05, 0.125) == doctest::Approx(2.0 + 8.0 - 2.0 / 0.95));
  CHECK(alpha_decay_iteration_bound(0.5, 0.5) == doctest::Approx(0.0));
  // alpha -> 0 approaches 1/mu
  CHECK(alpha_decay_iteration_bound(1e-9, 0.125) == doctest::Approx(8.0).epsilon(1e-8));
}

TEST_CASE("omp_guarantee examples") {
  const Dictionary a = i64_h64();
  const double mu = coherence(a).mu;
  REQUIRE(mu == 0.125);

  const Signal x = truncate_to_largest(make_alpha_decaying(128, 0.05), 7);
  const GuaranteeReport g = omp_guarantee(a, x, 7);
  CHECK(g.certified);
  CHECK(g.iteration_bound_ok);
  CHECK_FALSE(g.classical_certified);
  CHECK(g.C == 4.5);
  REQUIRE(g.per_iteration.size() == 7);
  for (const GuaranteeStep& s : g.per_iteration) {
    CHECK(s.tail_delta <= 1.0 / 0.95);
    CHECK(s.threshold_t == doctest::Approx(4.5 - 0.5 * static_cast<double>(s.t - 1)));
    CHECK(s.ok);
  }
  CHECK(g.per_iteration.back().threshold_t == doctest::Approx(1.5));

  Rng rng(3);
  for (std::size_t k = 1; k <= 6; ++k) {
    const Signal cm = constant_modulus(128, k, rng);
    const GuaranteeReport r = omp_guarantee(a, cm, k);
    for (const GuaranteeStep& s : r.per_iteration) {
      CHECK(s.tail_delta == doctest::Approx(static_cast<double>(k - (s.t - 1))));
    }
    CHECK(r.certified == (static_cast<double>(k) < 4.5));
    CHECK(r.classical_certified == r.certified);
  }

  CHECK(code_of([&] { omp_guarantee(a, x, 0); }) == ErrorCode::TMaxOutOfRange);
  CHECK(code_of([&] { omp_guarantee(a, x, 129); }) == ErrorCode::TMaxOutOfRange);

  const GuaranteeReport onb = omp_guarantee(identity_dictionary(4), Signal{1.0, 1.0, 1.0, 1.0}, 4);
  CHECK(onb.trivial_coherence);
  CHECK(onb.certified);
}

TEST_CASE("property: omp_guarantee certified runs recover the largest entries") {
  // Magnitudes decay by a factor of at most 0.3, so each largest entry is
  // separated from the rest; see the near-tie case below for why this matters.
  Rng rng(99);
  const Dictionary a = i64_h64();
  const double mu = coherence(a).mu;
  int checked = 0;
  for (int trial = 0; checked < 500; ++trial) {
    REQUIRE(trial < 20000);
    const std::size_t k = 1 + rng.uniform_index(9);
    const Signal x = separated(128, k, 0.01 + 0.29 * rng.uniform(), rng);
    const std::size_t t_max = 1 + rng.uniform_index(k);
    const GuaranteeReport g = omp_guarantee(mu, x, t_max);
    if (!g.certified) continue;
    ++checked;
    const OmpTrace trace = omp_run(a, Signal(a.apply(x)), t_max);
    REQUIRE(trace.iterations() == t_max);
    const std::vector<std::size_t> order = descending_magnitude_order(x);
    for (std::size_t t = 0; t < t_max; ++t) {
      REQUIRE(trace.selected[t] == order[t]);
    }
    if (t_max == k) {
      REQUIRE((trace.estimate(128).entries() - x.entries()).norm() <= 1e-8 * x.entries().norm());
    }
  }
}

TEST_CASE("near-tie: certified input where OMP's first pick is not the largest entry") {
  // Real three-atom dictionary with Gram matrix
  //   [[1, -m, -m], [-m, 1, m], [-m, m, 1]],  m = 1/8.
  // For x = [1, 0.99, 0.1] the correlations with y = A x are
  //   |g0| = 1 - 0.99 m - 0.1 m, |g1| = 0.99 - m + 0.1 m, |g2| = 0.1 - m + 0.99 m,
  // so atom 1 wins although |x_0| > |x_1|. The density test still passes:
  // delta(x) = 2.09 < (1 + 1/m)/2 = 4.5. Removing the near-tied entry x_1 is a
  // bounded error the density certificate does not account for.
  const double m = 0.125;
  Eigen::Matrix3d gram;
  gram << 1, -m, -m, -m, 1, m, -m, m, 1;
  const Eigen::Matrix3d l = gram.llt().matrixL();
  const Dictionary a = make_dictionary(l.transpose().cast<Complex>(), false);
  CHECK(coherence(a).mu == doctest::Approx(m).epsilon(1e-14));

  const Signal x{1.0, 0.99, 0.1};
  const GuaranteeReport g = omp_guarantee(a, x, 1);
  CHECK(g.certified);

  const OmpTrace trace = omp_run(a, Signal(a.apply(x)), 1);
  CHECK(trace.selected[0] == 1);
  CHECK(trace.correlations[0] == doctest::Approx(0.99 - m + 0.1 * m).epsilon(1e-12));

  // With t_max = ||x||_0 the support is still recovered exactly.
  const OmpTrace full = omp_run(a, Signal(a.apply(x)), 3);
  CHECK((full.estimate(3).entries() - x.entries()).norm() <= 1e-12);
}
