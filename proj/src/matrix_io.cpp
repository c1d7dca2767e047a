#include "lowdensity/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace lowdensity::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Parses a leading float from `s`, advancing it. Accepts an optional sign.
bool consume_double(std::string_view& s, double& out) {
  bool negative = false;
  std::size_t offset = 0;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    offset = 1;
  }
  const char* begin = s.data() + offset;
  const char* end = s.data() + s.size();
  if (begin == end || *begin == '+' || *begin == '-') {
    return false;
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value, std::chars_format::general);
  if (ec != std::errc()) {
    return false;
  }
  out = negative ? -value : value;
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return true;
}

struct Header {
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool complex_field = true;
};

Header parse_header(std::string_view line) {
  line = trim(line);
  if (line.empty() || line[0] != '#') {
    throw Error(ErrorCode::Parse, "missing '# rows=M cols=N field=...' header");
  }
  line.remove_prefix(1);
  Header header;
  bool have_rows = false;
  bool have_cols = false;
  bool have_field = false;
  std::istringstream tokens{std::string(line)};
  std::string token;
  while (tokens >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::Parse, "malformed header token '" + token + "'");
    }
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "rows" || key == "cols") {
      std::size_t parsed = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
      if (ec != std::errc() || ptr != value.data() + value.size() || parsed == 0) {
        throw Error(ErrorCode::Parse, "bad " + key + " value '" + value + "'");
      }
      (key == "rows" ? header.rows : header.cols) = parsed;
      (key == "rows" ? have_rows : have_cols) = true;
    } else if (key == "field") {
      if (value != "complex" && value != "real") {
        throw Error(ErrorCode::Parse, "field must be complex or real, got '" + value + "'");
      }
      header.complex_field = value == "complex";
      have_field = true;
    } else {
      throw Error(ErrorCode::Parse, "unknown header key '" + key + "'");
    }
  }
  if (!have_rows || !have_cols || !have_field) {
    throw Error(ErrorCode::Parse, "header needs rows, cols and field");
  }
  return header;
}

}  // namespace

Complex parse_cell(std::string_view cell) {
  std::string_view rest = trim(cell);
  const std::string original(rest);
  double re = 0.0;
  if (!consume_double(rest, re)) {
    throw Error(ErrorCode::Parse, "bad numeric cell '" + original + "'");
  }
  double im = 0.0;
  if (rest == "i") {  // pure imaginary
    im = re;
    re = 0.0;
  } else if (!rest.empty()) {
    if (rest[0] != '+' && rest[0] != '-') {
      throw Error(ErrorCode::Parse, "bad numeric cell '" + original + "'");
    }
    if (!consume_double(rest, im) || rest != "i") {
      throw Error(ErrorCode::Parse, "bad imaginary part in '" + original + "'");
    }
  }
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw Error(ErrorCode::NonFinite, "non-finite cell '" + original + "'");
  }
  return {re, im};
}

Matrix parse_matrix(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const auto line = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
    if (!trim(line).empty()) {
      lines.push_back(line);
    }
    if (end == std::string_view::npos) {
      break;
    }
    start = end + 1;
  }
  if (lines.empty()) {
    throw Error(ErrorCode::Parse, "empty matrix file");
  }
  const Header header = parse_header(lines[0]);
  if (lines.size() - 1 != header.rows) {
    throw Error(ErrorCode::Parse, "expected " + std::to_string(header.rows) + " rows, found " +
                                      std::to_string(lines.size() - 1));
  }
  Matrix out(static_cast<Eigen::Index>(header.rows), static_cast<Eigen::Index>(header.cols));
  for (std::size_t i = 0; i < header.rows; ++i) {
    std::string_view row = lines[i + 1];
    std::size_t j = 0;
    while (true) {
      const auto comma = row.find(',');
      const std::string_view cell = row.substr(0, comma);
      if (j >= header.cols) {
        throw Error(ErrorCode::Parse, "row " + std::to_string(i) + " has too many cells");
      }
      const Complex value = parse_cell(cell);
      if (!header.complex_field && value.imag() != 0.0) {
        throw Error(ErrorCode::Parse, "imaginary part in a field=real file");
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
      ++j;
      if (comma == std::string_view::npos) {
        break;
      }
      row.remove_prefix(comma + 1);
    }
    if (j != header.cols) {
      throw Error(ErrorCode::Parse, "row " + std::to_string(i) + " has " + std::to_string(j) +
                                        " cells, expected " + std::to_string(header.cols));
    }
  }
  return out;
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void dump(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  }
  out << text;
}

}  // namespace

Matrix read_matrix(const std::filesystem::path& path) { return parse_matrix(slurp(path)); }

Signal parse_signal(std::string_view text) {
  Matrix m = parse_matrix(text);
  if (m.cols() != 1) {
    throw Error(ErrorCode::Parse, "signal files must have cols=1");
  }
  return Signal(Vector(m.col(0)));
}

Signal read_signal(const std::filesystem::path& path) { return parse_signal(slurp(path)); }

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) {
    throw Error(ErrorCode::InvalidArgument, "cannot format value");
  }
  return std::string(buffer, ptr);
}

std::string format_cell(Complex value, bool complex_field) {
  std::string out = format_double(value.real());
  if (complex_field) {
    const double im = value.imag();
    out += std::signbit(im) ? '-' : '+';
    out += format_double(std::abs(im));
    out += 'i';
  }
  return out;
}

std::string format_matrix(const Matrix& matrix) {
  const bool complex_field = (matrix.imag().array() != 0.0).any();
  std::string out = "# rows=" + std::to_string(matrix.rows()) +
                    " cols=" + std::to_string(matrix.cols()) +
                    " field=" + (complex_field ? "complex" : "real") + "\n";
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) {
        out += ',';
      }
      out += format_cell(matrix(i, j), complex_field);
    }
    out += '\n';
  }
  return out;
}

void write_matrix(const std::filesystem::path& path, const Matrix& matrix) {
  dump(path, format_matrix(matrix));
}

void write_signal(const std::filesystem::path& path, const Signal& signal) {
  dump(path, format_matrix(signal.entries()));
}

}  // namespace lowdensity::io
