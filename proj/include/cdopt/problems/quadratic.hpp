#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "cdopt/errors.hpp"
#include "cdopt/linalg.hpp"
#include "cdopt/prox.hpp"

namespace cdopt {

// Unconstrained convex quadratic 1/2 x^T H x with H symmetric and positive
// diagonal, one coordinate per block. Small demo problem: closed-form
// coordinate minimization, exact per-coordinate model decrease for MBI.
class QuadraticProblem {
 public:
  QuadraticProblem(DenseMatrix h, DenseVector x0) : h_(std::move(h)), x_(std::move(x0)) {
    if (h_.rows() != h_.cols()) fail("shape", "quadratic matrix must be square");
    require_same_size(h_.rows(), x_.size(), "quadratic start point");
    for (std::size_t i = 0; i < h_.rows(); ++i) {
      for (std::size_t j = 0; j < h_.cols(); ++j) {
        if (h_(i, j) != h_(j, i)) fail("shape", "quadratic matrix must be symmetric");
      }
      if (h_(i, i) <= 0.0) {
        fail("invalid-lipschitz", "nonpositive diagonal at " + std::to_string(i));
      }
    }
  }

  std::size_t dimension() const { return x_.size(); }
  std::size_t block_count() const { return x_.size(); }
  const DenseVector& point() const { return x_; }

  double objective() const {
    const DenseVector hx = matvec(h_, x_);
    return 0.5 * dot(x_, hx);
  }

  DenseVector gradient() const { return matvec(h_, x_); }

  double gradient_norm() const { return norm2(gradient()); }

  // ---- generic block interface (scalar blocks) ----
  DenseVector block_value(std::size_t i) const {
    check_index(i);
    return {x_[i]};
  }

  void set_block(std::size_t i, const DenseVector& v) {
    check_index(i);
    require_same_size(v.size(), std::size_t{1}, "quadratic block");
    x_[i] = v[0];
  }

  DenseVector block_gradient(std::size_t i) const {
    check_index(i);
    double g = 0.0;
    for (std::size_t j = 0; j < x_.size(); ++j) g += h_(i, j) * x_[j];
    return {g};
  }

  DenseVector block_gradient_shifted(std::size_t i, const DenseVector& shifted) const {
    check_index(i);
    require_same_size(shifted.size(), std::size_t{1}, "quadratic block");
    DenseVector g = block_gradient(i);
    g[0] += h_(i, i) * (shifted[0] - x_[i]);
    return g;
  }

  SeparableRegularizer block_regularizer(std::size_t) const { return make_zero_reg(); }

  double block_lipschitz(std::size_t i) const {
    check_index(i);
    return h_(i, i);
  }

  // argmin_v 1/2 H_ii v^2 + v * sum_{j != i} H_ij x_j + prox_weight/2 (v - x_i)^2
  DenseVector exact_block_min(std::size_t i, double prox_weight) const {
    check_index(i);
    if (prox_weight < 0.0) fail("invalid-step", "negative proximal weight");
    const double off = block_gradient(i)[0] - h_(i, i) * x_[i];  // sum_{j!=i} H_ij x_j
    return {(prox_weight * x_[i] - off) / (h_(i, i) + prox_weight)};
  }

  // Objective decrease (a negative number, constant term dropped) achieved by
  // exact minimization of each coordinate; MBI picks the argmin.
  DenseVector mbi_scores() const {
    DenseVector out(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) {
      const double g = block_gradient(i)[0];
      const double d = exact_block_min(i, 0.0)[0] - x_[i];
      out[i] = g * d + 0.5 * h_(i, i) * d * d;
    }
    return out;
  }

  DenseVector gs_scores() const {
    DenseVector out(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) out[i] = std::abs(block_gradient(i)[0]);
    return out;
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= x_.size()) fail("index", "block " + std::to_string(i));
  }

  DenseMatrix h_;
  DenseVector x_;
};

}  // namespace cdopt
