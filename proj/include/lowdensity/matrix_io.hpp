#pragma once

// Plain-text matrix files.
//
//   # rows=M cols=N field=complex|real
//   c11,c12,...,c1N
//   ...
//   cM1,cM2,...,cMN
//
// A cell is `RE`, `IMi`, or `RE+IMi` / `RE-IMi` with decimal floats (exponents
// allowed), e.g. `0.5-0.25i`, `1.0`, `-1e-3+2e-4i`. Real files reject
// imaginary parts. Signals are files with cols=1. Indices in every file and
// report are zero-based.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "lowdensity/types.hpp"

namespace lowdensity::io {

Matrix parse_matrix(std::string_view text);
Matrix read_matrix(const std::filesystem::path& path);

/// Parses a matrix and requires cols == 1.
Signal parse_signal(std::string_view text);
Signal read_signal(const std::filesystem::path& path);

/// Parses one cell of the grammar above. Throws Parse on malformed input.
Complex parse_cell(std::string_view cell);

/// Shortest round-trip decimal form of `value`.
std::string format_double(double value);
std::string format_cell(Complex value, bool complex_field);

/// Emits field=real when every imaginary part is exactly zero.
std::string format_matrix(const Matrix& matrix);
void write_matrix(const std::filesystem::path& path, const Matrix& matrix);
void write_signal(const std::filesystem::path& path, const Signal& signal);

}  // namespace lowdensity::io
