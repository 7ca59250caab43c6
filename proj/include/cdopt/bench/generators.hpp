#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "cdopt/errors.hpp"
#include "cdopt/linalg.hpp"
#include "cdopt/rng.hpp"

namespace cdopt {

// Synthetic instances are pure functions of their parameters and seed, so a
// run can be reproduced from the flags alone.

struct LassoInstance {
  DenseMatrix a;        // m x n, iid standard normal
  DenseVector b;        // a * planted + noise
  DenseVector planted;  // k-sparse ground truth
  double lambda = 0.0;
};

inline LassoInstance gen_lasso(std::size_t m, std::size_t n, std::size_t k, double sigma,
                               double lambda, std::uint64_t seed) {
  if (m == 0 || n == 0) fail("shape", "lasso instance needs m, n >= 1");
  if (k > n) fail("invalid-support", "support " + std::to_string(k) + " exceeds dimension");
  if (sigma < 0.0) fail("invalid-weight", "negative noise level");
  if (lambda <= 0.0) fail("invalid-weight", "lambda must be positive");
  Rng rng(seed);
  LassoInstance inst;
  inst.lambda = lambda;
  inst.a = DenseMatrix(m, n);
  for (double& v : inst.a.data()) v = rng.normal();
  inst.planted.assign(n, 0.0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  const double spread = std::sqrt(2.0);  // planted nonzeros have variance 2
  for (std::size_t t = 0; t < k; ++t) inst.planted[order[t]] = spread * rng.normal();
  inst.b = matvec(inst.a, inst.planted);
  for (double& v : inst.b) v += sigma * rng.normal();
  return inst;
}

struct NmfInstance {
  DenseMatrix data;  // planted_left * planted_right^T, exactly low rank
  DenseMatrix x0;    // starting factors: uniform (0,1], then one normalization
  DenseMatrix y0;
  DenseMatrix planted_left;
  DenseMatrix planted_right;
};

inline NmfInstance gen_nmf(std::size_t m, std::size_t n, std::size_t r, std::uint64_t seed) {
  if (m == 0 || n == 0) fail("shape", "nmf instance needs m, n >= 1");
  if (r == 0 || r > std::min(m, n)) {
    fail("invalid-rank", "rank " + std::to_string(r) + " for " + std::to_string(m) + "x" +
                             std::to_string(n));
  }
  Rng rng(seed);
  NmfInstance inst;
  inst.planted_left = DenseMatrix(m, r);
  inst.planted_right = DenseMatrix(n, r);
  for (double& v : inst.planted_left.data()) v = rng.uniform_open01();
  for (double& v : inst.planted_right.data()) v = rng.uniform_open01();
  inst.data = DenseMatrix(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < r; ++l) s += inst.planted_left(i, l) * inst.planted_right(j, l);
      inst.data(i, j) = s;
    }
  }
  inst.x0 = DenseMatrix(m, r);
  inst.y0 = DenseMatrix(n, r);
  for (double& v : inst.x0.data()) v = rng.uniform_open01();
  for (double& v : inst.y0.data()) v = rng.uniform_open01();
  // one normalization pass: unit-norm columns of x0, compensated in y0
  for (std::size_t l = 0; l < r; ++l) {
    double nsq = 0.0;
    for (std::size_t i = 0; i < m; ++i) nsq += inst.x0(i, l) * inst.x0(i, l);
    const double d = std::sqrt(nsq);
    if (d == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) inst.x0(i, l) /= d;
    for (std::size_t j = 0; j < n; ++j) inst.y0(j, l) *= d;
  }
  return inst;
}

struct LogisticInstance {
  DenseMatrix x;  // m x 2, two bivariate normal clouds
  DenseVector y;  // +-1
  double c = 1.0;
};

inline LogisticInstance gen_logistic(std::size_t m, double separation, double c,
                                     std::uint64_t seed) {
  if (m % 2 != 0) fail("invalid-count", "sample count must be even to balance the classes");
  if (m < 2) fail("shape", "logistic instance needs at least two samples");
  if (c <= 0.0) fail("invalid-weight", "C must be positive");
  Rng rng(seed);
  LogisticInstance inst;
  inst.c = c;
  inst.x = DenseMatrix(m, 2);
  inst.y.resize(m);
  const std::size_t pos = m / 2;
  for (std::size_t i = 0; i < m; ++i) {
    const double label = i < pos ? 1.0 : -1.0;
    inst.y[i] = label;
    inst.x(i, 0) = label * 0.5 * separation + rng.normal();
    inst.x(i, 1) = rng.normal();
  }
  return inst;
}

struct SvmInstance {
  DenseMatrix q;  // m x m, Q_ij = y_i y_j x_i^T x_j
  DenseMatrix x;  // m x n features
  DenseVector y;
  double c = 1.0;
};

inline SvmInstance gen_svm(std::size_t m, std::size_t n, double separation, double c,
                           std::uint64_t seed) {
  if (m % 2 != 0) fail("invalid-count", "sample count must be even to balance the classes");
  if (m < 2 || n == 0) fail("shape", "svm instance needs m >= 2 and n >= 1");
  if (c <= 0.0) fail("invalid-weight", "C must be positive");
  Rng rng(seed);
  SvmInstance inst;
  inst.c = c;
  inst.x = DenseMatrix(m, n);
  inst.y.resize(m);
  const std::size_t pos = m / 2;
  for (std::size_t i = 0; i < m; ++i) {
    const double label = i < pos ? 1.0 : -1.0;
    inst.y[i] = label;
    inst.x(i, 0) = label * 0.5 * separation + rng.normal();
    for (std::size_t j = 1; j < n; ++j) inst.x(i, j) = rng.normal();
  }
  inst.q = DenseMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double v = inst.y[i] * inst.y[j] * dot_n(inst.x.row(i), inst.x.row(j), n);
      inst.q(i, j) = v;
      inst.q(j, i) = v;
    }
  }
  return inst;
}

}  // namespace cdopt
