#pragma once

#include <cstddef>

#include "lowdensity/rng.hpp"
#include "lowdensity/types.hpp"

namespace lowdensity {

/// Wraps `matrix` as a dictionary. With `normalize`, every column is divided by
/// its l2 norm (ZeroColumn if a norm is below 1e-12); otherwise every column
/// must already be within 1e-8 of unit norm (NotNormalized). NonFinite on NaN
/// or Inf entries.
Dictionary make_dictionary(const Matrix& matrix, bool normalize);

/// Validates without rescaling; used by the constructors below.
Dictionary make_validated_dictionary(Matrix atoms);

/// Sylvester Hadamard matrix of order M scaled by 1/sqrt(M). M must be a power
/// of two (NotPowerOfTwo).
Dictionary hadamard_dictionary(std::size_t m);

/// M x M identity.
Dictionary identity_dictionary(std::size_t m);

/// [A, B], A's columns first. RowMismatch when the row counts differ.
Dictionary concat_dictionaries(const Dictionary& a, const Dictionary& b);

/// I.i.d. standard complex Gaussian entries, columns normalized afterwards.
Dictionary random_unit_dictionary(std::size_t m, std::size_t n, Rng& rng);

/// Random M x M orthonormal basis: Householder QR of a complex Gaussian
/// matrix, with column phases fixed so that diag(R) is positive.
Dictionary random_orthonormal_basis(std::size_t m, Rng& rng);

/// Max absolute deviation of the column norms from one.
double max_column_norm_deviation(const Matrix& matrix);

}  // namespace lowdensity
