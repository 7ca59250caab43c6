#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "cdopt/linalg.hpp"

namespace cdopt {

// Largest squared singular value of a, i.e. the top eigenvalue of a^T a,
// estimated by power iteration with a deterministic all-ones start vector
// (reproducibility over randomized starts). The Rayleigh quotient can only
// undershoot the true value, so the result is floored by the largest column
// norm squared -- a genuine lower bound on the top eigenvalue that also guards
// the corner case where the all-ones vector is orthogonal to the leading
// eigenvector and the iteration stalls on a smaller eigenvalue.
inline double spectral_norm_sq(const DenseMatrix& a, std::size_t max_iters = 200,
                               double tol = 1e-10) {
  const std::size_t n = a.cols();
  if (n == 0 || a.rows() == 0) return 0.0;

  double max_col_sq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) c += a(i, j) * a(i, j);
    max_col_sq = std::max(max_col_sq, c);
  }
  if (max_col_sq == 0.0) return 0.0;  // all-zero matrix

  DenseVector v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double lam = 0.0;
  double prev = -1.0;
  for (std::size_t it = 0; it < max_iters; ++it) {
    DenseVector w = matvec(a, v);
    DenseVector u = matvec_transposed(a, w);  // a^T a v
    lam = dot(v, u);
    const double nu = norm2(u);
    if (nu == 0.0) break;  // v in the null space; fall back to the column bound
    for (std::size_t i = 0; i < n; ++i) v[i] = u[i] / nu;
    if (std::abs(lam - prev) <= tol) break;
    prev = lam;
  }
  return std::max(lam, max_col_sq);
}

}  // namespace cdopt
