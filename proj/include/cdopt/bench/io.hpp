#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cdopt/errors.hpp"
#include "cdopt/linalg.hpp"

namespace cdopt {

// All numeric output uses %.17g so files round-trip doubles exactly and two
// runs with the same seed produce byte-identical artifacts.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Dense CSV with a one-line "rows,cols" header.
inline void write_matrix_csv(const DenseMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("file", "cannot open for writing: " + path);
  out << m.rows() << "," << m.cols() << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ",";
      out << format_double(m(i, j));
    }
    out << "\n";
  }
  if (!out) fail("file", "write failed: " + path);
}

inline void write_vector_csv(const DenseVector& v, const std::string& path) {
  DenseMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  write_matrix_csv(m, path);
}

inline DenseMatrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("file", "cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) fail("file", "empty file: " + path);
  std::size_t rows = 0, cols = 0;
  {
    std::istringstream header(line);
    char comma = 0;
    if (!(header >> rows >> comma >> cols) || comma != ',') {
      fail("file", "bad shape header in " + path);
    }
  }
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) fail("shape", "expected " + std::to_string(rows) + " rows in " + path);
    std::istringstream row(line);
    std::string cell;
    for (std::size_t j = 0; j < cols; ++j) {
      if (!std::getline(row, cell, ',')) {
        fail("shape", "row " + std::to_string(i) + " of " + path + " is too short");
      }
      try {
        m(i, j) = std::stod(cell);
      } catch (const std::exception&) {
        fail("file", "bad number '" + cell + "' in " + path);
      }
    }
  }
  return m;
}

inline DenseVector read_vector_csv(const std::string& path) {
  const DenseMatrix m = read_matrix_csv(path);
  if (m.cols() != 1) fail("shape", path + " holds a matrix, expected a single column");
  DenseVector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, 0);
  return v;
}

}  // namespace cdopt
