#include "fdecay/mtx_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fdecay {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error("mtx_read: " + path + ": " + what);
}

bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos) continue;  // blank
    if (line[pos] == '%') continue;          // comment
    return true;
  }
  return false;
}

}  // namespace

Matrix mtx_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");

  std::string banner;
  if (!std::getline(in, banner)) fail(path, "empty file");
  std::istringstream bs(banner);
  std::string tag, object, format, field, symmetry;
  bs >> tag >> object >> format >> field >> symmetry;
  if (lower(tag) != "%%matrixmarket" || lower(object) != "matrix")
    fail(path, "malformed header banner");
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format != "coordinate" && format != "array")
    fail(path, "unsupported format '" + format + "'");
  if (field != "real" && field != "complex" && field != "integer")
    fail(path, "unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "hermitian")
    fail(path, "unsupported symmetry '" + symmetry + "'");

  std::string line;
  if (!next_data_line(in, line)) fail(path, "missing size line");
  std::istringstream sz(line);

  const bool complex_field = field == "complex";
  const bool sym = symmetry != "general";

  if (format == "coordinate") {
    long rows = 0, cols = 0, nnz = 0;
    if (!(sz >> rows >> cols >> nnz) || rows <= 0 || cols <= 0 || nnz < 0)
      fail(path, "malformed size line");
    Matrix a = Matrix::Zero(rows, cols);
    long seen = 0;
    while (next_data_line(in, line)) {
      std::istringstream es(line);
      long i = 0, j = 0;
      double re = 0, im = 0;
      if (!(es >> i >> j >> re)) fail(path, "malformed entry line: " + line);
      if (complex_field && !(es >> im)) fail(path, "missing imaginary part: " + line);
      if (i < 1 || i > rows || j < 1 || j > cols)
        fail(path, "index out of declared range: " + line);
      ++seen;
      if (seen > nnz) fail(path, "entry count mismatch (more entries than declared)");
      const Complex v(re, im);
      a(i - 1, j - 1) += v;
      if (sym && i != j) {
        a(j - 1, i - 1) += symmetry == "hermitian" ? std::conj(v) : v;
      }
    }
    if (seen != nnz) fail(path, "entry count mismatch (fewer entries than declared)");
    return a;
  }

  // array format: column-major dense values, lower triangle when symmetric
  long rows = 0, cols = 0;
  if (!(sz >> rows >> cols) || rows <= 0 || cols <= 0) fail(path, "malformed size line");
  if (sym && rows != cols) fail(path, "symmetric array matrix must be square");
  Matrix a = Matrix::Zero(rows, cols);
  long expected = sym ? cols * (2 * rows - cols + 1) / 2 : rows * cols;
  long seen = 0;
  long i = 0, j = 0;  // 0-based cursor; symmetric storage starts each column at the diagonal
  while (next_data_line(in, line)) {
    std::istringstream es(line);
    double re = 0, im = 0;
    if (!(es >> re)) fail(path, "malformed value line: " + line);
    if (complex_field && !(es >> im)) fail(path, "missing imaginary part: " + line);
    if (seen >= expected) fail(path, "entry count mismatch (more values than declared)");
    const Complex v(re, im);
    a(i, j) = v;
    if (sym && i != j) a(j, i) = symmetry == "hermitian" ? std::conj(v) : v;
    ++seen;
    ++i;
    if (i == rows) {
      ++j;
      i = sym ? j : 0;
    }
  }
  if (seen != expected) fail(path, "entry count mismatch (fewer values than declared)");
  return a;
}

void mtx_write(const std::string& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("mtx_write: cannot open " + path);
  out << "%%MatrixMarket matrix array complex general\n";
  out << a.rows() << " " << a.cols() << "\n";
  char buf[64];
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", a(i, j).real(), a(i, j).imag());
      out << buf;
    }
}

}  // namespace fdecay
