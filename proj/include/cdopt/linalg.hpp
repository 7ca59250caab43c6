#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cdopt/errors.hpp"

namespace cdopt {

using DenseVector = std::vector<double>;

// Row-major owning dense matrix. Kept deliberately small: the solvers only
// need element access, row pointers, and transposition.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  DenseVector col(std::size_t j) const {
    DenseVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = data_[i * cols_ + j];
    return out;
  }

  DenseMatrix transposed() const {
    DenseMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline bool all_finite(const DenseVector& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline bool all_finite(const DenseMatrix& m) {
  for (double x : m.data())
    if (!std::isfinite(x)) return false;
  return true;
}

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    fail("shape", std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

inline double dot(const DenseVector& a, const DenseVector& b) {
  require_same_size(a.size(), b.size(), "dot operands");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Dot against a raw stride-1 row of length n (used for matrix rows).
inline double dot_row(const double* a, const DenseVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double dot_n(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const DenseVector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

inline double norm2(const DenseVector& v) { return std::sqrt(norm_sq(v)); }

inline double l1_norm(const DenseVector& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

inline double linf_norm(const DenseVector& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

// y += alpha * x
inline void axpy(double alpha, const DenseVector& x, DenseVector& y) {
  require_same_size(x.size(), y.size(), "axpy operands");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline DenseVector scaled(const DenseVector& v, double alpha) {
  DenseVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = alpha * v[i];
  return out;
}

inline DenseVector vec_add(const DenseVector& a, const DenseVector& b) {
  require_same_size(a.size(), b.size(), "vec_add operands");
  DenseVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline DenseVector vec_sub(const DenseVector& a, const DenseVector& b) {
  require_same_size(a.size(), b.size(), "vec_sub operands");
  DenseVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline DenseVector matvec(const DenseMatrix& m, const DenseVector& v) {
  require_same_size(m.cols(), v.size(), "matvec operands");
  DenseVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot_row(m.row(i), v);
  return out;
}

// m^T v without forming the transpose.
inline DenseVector matvec_transposed(const DenseMatrix& m, const DenseVector& v) {
  require_same_size(m.rows(), v.size(), "matvec_transposed operands");
  DenseVector out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* r = m.row(i);
    const double vi = v[i];
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += vi * r[j];
  }
  return out;
}

inline double frobenius_norm_sq(const DenseMatrix& m) {
  double s = 0.0;
  for (double x : m.data()) s += x * x;
  return s;
}

}  // namespace cdopt
