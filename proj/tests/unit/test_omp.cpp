#include <doctest.h>

#include <cmath>
#include <numeric>

#include "convert.hpp"
#include "lowdensity/coherence.hpp"
#include "lowdensity/core.hpp"
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

Dictionary i64_h64() { return concat_dictionaries(identity_dictionary(64), hadamard_dictionary(64)); }

Signal atom(const Dictionary& a, std::size_t j, Complex scale) {
  Vector v = a.matrix().col(static_cast<Eigen::Index>(j)) * scale;
  return Signal(v);
}

void check_trace_invariants(const Dictionary& a, const OmpTrace& trace) {
  REQUIRE(trace.residual_norms.size() == trace.iterations() + 1);
  for (std::size_t t = 1; t < trace.residual_norms.size(); ++t) {
    REQUIRE(trace.residual_norms[t] <= trace.residual_norms[t - 1] + 1e-12);
  }
  const oracle::cmat cols = testutil::to_cmat(a);
  const oracle::cvec r = testutil::to_cvec(trace.residual);
  for (std::size_t i : trace.support.indices()) {
    REQUIRE(std::abs(oracle::inner(cols[i], r)) <= 1e-8);
  }
}

}  // namespace

TEST_CASE("omp_select") {
  Rng rng(1);
  const Dictionary a = random_unit_dictionary(16, 24, rng);
  const AtomSelection s = omp_select(a, a.matrix().col(3), SupportSet());
  CHECK(s.index == 3);
  CHECK(s.correlation == doctest::Approx(1.0));

  const Dictionary ih = concat_dictionaries(identity_dictionary(4), hadamard_dictionary(4));
  Vector e0 = Vector::Zero(4);
  e0[0] = 1.0;
  const AtomSelection t = omp_select(ih, e0, SupportSet());
  CHECK(t.index == 0);
  CHECK(t.correlation == doctest::Approx(1.0));
  const AtomSelection u = omp_select(ih, e0, SupportSet({0}, 8));
  CHECK(u.index == 4);  // all Hadamard correlations are 1/2; lowest index wins
  CHECK(u.correlation == doctest::Approx(0.5));

  const Dictionary i3 = identity_dictionary(3);
  Vector r = Vector::Zero(3);
  r[0] = 1.0;
  const AtomSelection orth = omp_select(i3, r, SupportSet({0}, 3));
  CHECK(orth.index == 1);
  CHECK(orth.correlation == 0.0);
  CHECK(code_of([&] { omp_select(i3, r, SupportSet({0, 1, 2}, 3)); }) == ErrorCode::EmptyRemaining);
}

TEST_CASE("least_squares_on_support") {
  Rng rng(2);
  const Dictionary a = random_unit_dictionary(8, 12, rng);
  const Vector y = a.matrix().col(5) * 5.0;
  const LeastSquaresFit fit = least_squares_on_support(a, SupportSet({5}, 12), y);
  CHECK(std::abs(fit.coefficients[0] - Complex(5.0, 0.0)) <= 1e-12);
  CHECK(fit.residual.norm() <= 1e-12);

  const LeastSquaresFit empty = least_squares_on_support(a, SupportSet(), y);
  CHECK(empty.residual == y);

  Matrix dup = a.matrix();
  dup.col(1) = dup.col(0);
  const Dictionary d = make_dictionary(dup, false);
  CHECK(code_of([&] { least_squares_on_support(d, SupportSet({0, 1}, 12), y); }) ==
        ErrorCode::RankDeficient);

  // residual norm agrees with an independent normal-equation solve
  for (int trial = 0; trial < 50; ++trial) {
    Vector yy(8);
    for (Eigen::Index i = 0; i < 8; ++i) yy[i] = rng.complex_normal();
    const std::vector<std::size_t> s = {rng.uniform_index(4), 4 + rng.uniform_index(4), 8 + rng.uniform_index(4)};
    const LeastSquaresFit f = least_squares_on_support(a, SupportSet(s, 12), yy);
    CHECK(f.residual.norm() ==
          doctest::Approx(oracle::ls_residual(testutil::to_cmat(a), s, testutil::to_cvec(yy))).epsilon(1e-10));
  }
}

TEST_CASE("omp_run examples") {
  Rng rng(3);
  const Dictionary a = random_unit_dictionary(16, 24, rng);
  const OmpTrace one = omp_run(a, atom(a, 3, 5.0), 1);
  CHECK(one.support.indices() == std::vector<std::size_t>{3});
  CHECK(std::abs(one.coefficients[0] - Complex(5.0, 0.0)) <= 1e-12);
  CHECK(one.residual_norms.back() <= 1e-12);

  // stops early once the residual vanishes
  const OmpTrace early = omp_run(a, atom(a, 3, 5.0), 4);
  CHECK(early.iterations() == 1);

  const OmpTrace tol = omp_run(a, atom(a, 3, 5.0), 4, 10.0);
  CHECK(tol.iterations() == 0);
  CHECK(tol.estimate(24).entries().norm() == 0.0);

  CHECK(code_of([&] { omp_run(a, atom(a, 3, 1.0), 0); }) == ErrorCode::TMaxOutOfRange);
  CHECK(code_of([&] { omp_run(a, atom(a, 3, 1.0), 17); }) == ErrorCode::TMaxOutOfRange);
  CHECK(code_of([&] { omp_run(a, Signal::zeros(3), 1); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("property: classical regime recovers constant-modulus signals exactly") {
  Rng rng(64);
  const Dictionary a = i64_h64();
  REQUIRE(coherence(a).mu == 0.125);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + rng.uniform_index(4);
    std::vector<std::size_t> idx(128);
    std::iota(idx.begin(), idx.end(), 0);
    Vector x = Vector::Zero(128);
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(idx[i], idx[i + rng.uniform_index(128 - i)]);
      x[static_cast<Eigen::Index>(idx[i])] = 2.0 * rng.unit_phase();
    }
    const Signal xs(x);
    const OmpTrace trace = omp_run(a, Signal(a.apply(xs)), k);
    check_trace_invariants(a, trace);
    std::vector<std::size_t> want(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(want.begin(), want.end());
    REQUIRE(trace.support.sorted() == want);
    REQUIRE((trace.estimate(128).entries() - x).norm() <= 1e-8 * x.norm());
  }
}

TEST_CASE("property: residual monotonicity and orthogonality on random traces") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 4 + rng.uniform_index(20);
    const std::size_t n = m + rng.uniform_index(20);
    const Dictionary a = random_unit_dictionary(m, n, rng);
    Vector y(static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = rng.complex_normal();
    const OmpTrace trace = omp_run(a, Signal(y), 1 + rng.uniform_index(m));
    check_trace_invariants(a, trace);
  }
}

TEST_CASE("property: exact fit at full support") {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const Dictionary a = random_unit_dictionary(12, 20, rng);
    Vector x = Vector::Zero(20);
    const std::size_t k = 1 + rng.uniform_index(5);
    for (std::size_t i = 0; i < k; ++i) x[static_cast<Eigen::Index>(rng.uniform_index(20))] = rng.complex_normal();
    const Vector y = a.matrix() * x;
    if (y.norm() == 0.0) continue;
    // t_max = M forces a full-rank support of size M, which spans y
    const OmpTrace trace = omp_run(a, Signal(y), 12);
    CHECK(trace.residual_norms.back() <= 1e-8 * y.norm());
  }
}
