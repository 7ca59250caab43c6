#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "cdopt/errors.hpp"
#include "cdopt/linalg.hpp"
#include "cdopt/tv1d.hpp"

namespace cdopt {

// Soft-thresholding: prox of beta * |.|.
inline double shrink(double y, double beta) {
  if (beta < 0.0) fail("invalid-weight", "shrink with negative threshold " + std::to_string(beta));
  if (y > beta) return y - beta;
  if (y < -beta) return y + beta;
  return 0.0;
}

// Projection onto [lo, hi]; the prox of the interval indicator at any scale.
inline double project_interval(double y, double lo, double hi) {
  if (lo > hi) {
    fail("empty-domain", "interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return std::min(std::max(y, lo), hi);
}

// Block soft-thresholding: prox of beta * ||.||_2.
inline DenseVector group_shrink(const DenseVector& y, double beta) {
  if (beta < 0.0) {
    fail("invalid-weight", "group shrink with negative threshold " + std::to_string(beta));
  }
  const double n = norm2(y);
  if (n <= beta) return DenseVector(y.size(), 0.0);
  return scaled(y, 1.0 - beta / n);
}

// Prox of alpha * |.| + quad/2 * (.)^2: shrink, then deflate by the quadratic.
inline double prox_elastic_net(double y, double alpha, double quad) {
  if (alpha < 0.0 || quad < 0.0) {
    fail("invalid-weight", "elastic net with negative parameter");
  }
  return shrink(y, alpha) / (1.0 + quad);
}

enum class RegKind {
  kZero,
  kL1,         // weight * ||x||_1
  kGroupL2,    // weight * ||x||_2 over the whole block
  kBox,        // indicator of [lo, hi]^n
  kNonneg,     // indicator of the nonnegative orthant
  kTv1d,       // weight * sum |x_{i+1} - x_i|
  kElasticNet  // weight * ||x||_1 + quad/2 * ||x||_2^2, componentwise
};

// One separable (blockwise) regularizer term. `weight` multiplies the
// seminorm part; `quad` is only read by the elastic-net kind; `lo`/`hi` only
// by the box kind.
struct SeparableRegularizer {
  RegKind kind = RegKind::kZero;
  double weight = 0.0;
  double quad = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

inline SeparableRegularizer make_zero_reg() { return {}; }
inline SeparableRegularizer make_l1_reg(double weight) {
  return {RegKind::kL1, weight, 0.0, 0.0, 0.0};
}
inline SeparableRegularizer make_group_l2_reg(double weight) {
  return {RegKind::kGroupL2, weight, 0.0, 0.0, 0.0};
}
inline SeparableRegularizer make_box_reg(double lo, double hi) {
  return {RegKind::kBox, 0.0, 0.0, lo, hi};
}
inline SeparableRegularizer make_nonneg_reg() { return {RegKind::kNonneg, 0.0, 0.0, 0.0, 0.0}; }
inline SeparableRegularizer make_tv1d_reg(double weight) {
  return {RegKind::kTv1d, weight, 0.0, 0.0, 0.0};
}
inline SeparableRegularizer make_elastic_net_reg(double weight, double quad) {
  return {RegKind::kElasticNet, weight, quad, 0.0, 0.0};
}

inline void validate_regularizer(const SeparableRegularizer& r) {
  if (r.weight < 0.0 || r.quad < 0.0) {
    fail("invalid-weight", "regularizer with negative weight");
  }
  if (r.kind == RegKind::kBox && r.lo > r.hi) {
    fail("empty-domain",
         "box [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
  }
}

// Value of the regularizer at x (+inf outside an indicator's domain).
inline double regularizer_value(const SeparableRegularizer& r, const DenseVector& x) {
  validate_regularizer(r);
  const double inf = std::numeric_limits<double>::infinity();
  switch (r.kind) {
    case RegKind::kZero:
      return 0.0;
    case RegKind::kL1:
      return r.weight * l1_norm(x);
    case RegKind::kGroupL2:
      return r.weight * norm2(x);
    case RegKind::kBox:
      for (double v : x)
        if (v < r.lo || v > r.hi) return inf;
      return 0.0;
    case RegKind::kNonneg:
      for (double v : x)
        if (v < 0.0) return inf;
      return 0.0;
    case RegKind::kTv1d: {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) s += std::abs(x[i + 1] - x[i]);
      return r.weight * s;
    }
    case RegKind::kElasticNet:
      return r.weight * l1_norm(x) + 0.5 * r.quad * norm_sq(x);
  }
  fail("unsupported-prox", "unknown regularizer kind");
}

// prox of scale * r at y. Projections ignore the scale.
inline DenseVector prox_apply(const SeparableRegularizer& r, const DenseVector& y, double scale) {
  if (scale <= 0.0) fail("invalid-scale", "prox scale must be positive");
  validate_regularizer(r);
  DenseVector out(y.size());
  switch (r.kind) {
    case RegKind::kZero:
      return y;
    case RegKind::kL1:
      for (std::size_t i = 0; i < y.size(); ++i) out[i] = shrink(y[i], scale * r.weight);
      return out;
    case RegKind::kGroupL2:
      return group_shrink(y, scale * r.weight);
    case RegKind::kBox:
      for (std::size_t i = 0; i < y.size(); ++i) out[i] = project_interval(y[i], r.lo, r.hi);
      return out;
    case RegKind::kNonneg:
      for (std::size_t i = 0; i < y.size(); ++i) out[i] = std::max(y[i], 0.0);
      return out;
    case RegKind::kTv1d:
      return prox_tv1d(y, scale * r.weight);
    case RegKind::kElasticNet:
      for (std::size_t i = 0; i < y.size(); ++i)
        out[i] = prox_elastic_net(y[i], scale * r.weight, scale * r.quad);
      return out;
  }
  fail("unsupported-prox", "unknown regularizer kind");
}

}  // namespace cdopt
