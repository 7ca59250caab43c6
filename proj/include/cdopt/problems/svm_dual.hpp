#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cdopt/errors.hpp"
#include "cdopt/flops.hpp"
#include "cdopt/index_rules.hpp"
#include "cdopt/linalg.hpp"
#include "cdopt/prox.hpp"
#include "cdopt/spectral.hpp"

namespace cdopt {

// Dual of the l2-loss-free soft-margin SVM:
//   min_alpha 1/2 alpha^T Q alpha - 1^T alpha   s.t.  0 <= alpha <= C,
// with Q_ij = y_i y_j x_i^T x_j, one dual variable per block. The cache is
// Q alpha, moved along one column of Q per update: O(m) per coordinate step
// against O(m^2) for a full projected-gradient step.
class SvmDualProblem {
 public:
  SvmDualProblem(DenseMatrix q, double c) : q_(std::move(q)), c_(c) {
    if (q_.rows() != q_.cols()) fail("shape", "Q must be square");
    if (q_.rows() == 0) fail("shape", "empty Q");
    if (c_ <= 0.0) fail("invalid-weight", "C must be positive");
    alpha_.assign(q_.rows(), 0.0);
    qalpha_.assign(q_.rows(), 0.0);
    cache_valid_ = true;
    lip_global_ = std::sqrt(spectral_norm_sq(q_, 1000, 1e-12));  // ||Q||_2 for symmetric Q
  }

  std::size_t size() const { return alpha_.size(); }
  std::size_t block_count() const { return alpha_.size(); }
  const DenseVector& point() const { return alpha_; }
  double box_upper() const { return c_; }
  double global_lipschitz() const { return lip_global_; }
  FlopCounter& counter() { return counter_; }

  // ---- observers (never tally) ----
  double objective() const {
    const DenseVector qa = cache_valid_ ? qalpha_ : matvec(q_, alpha_);
    double s = 0.0;
    for (double a : alpha_) s += a;
    return 0.5 * dot(alpha_, qa) - s;
  }

  bool feasible() const {
    for (double a : alpha_) {
      if (a < 0.0 || a > c_) return false;
    }
    return true;
  }

  // || alpha - proj(alpha - (Q alpha - 1) / Q_ii) ||, the blockwise
  // projected-gradient displacement at the per-coordinate steps.
  double projected_gradient_norm() const {
    const DenseVector qa = cache_valid_ ? qalpha_ : matvec(q_, alpha_);
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      const double g = qa[i] - 1.0;
      const double d =
          alpha_[i] - project_interval(alpha_[i] - g / q_(i, i), 0.0, c_);
      s += d * d;
    }
    return std::sqrt(s);
  }

  double cache_drift() const {
    if (!cache_valid_) return 0.0;
    const DenseVector fresh = matvec(q_, alpha_);
    double d = 0.0;
    for (std::size_t i = 0; i < size(); ++i) d = std::max(d, std::abs(fresh[i] - qalpha_[i]));
    return d;
  }

  // ---- updates (tally) ----

  // alpha_i <- clip(alpha_i - (Q_{i,:} alpha - 1) / Q_ii, [0, C]).
  void coordinate_step(std::size_t i) {
    check_index(i);
    check_diagonal(i);
    ensure_cache();
    const double g = qalpha_[i] - 1.0;
    const double v = project_interval(alpha_[i] - g / q_(i, i), 0.0, c_);
    counter_.add(FlopCategory::kScalar, 3);
    counter_.add(FlopCategory::kProx, 1);
    apply_coordinate(i, v);
  }

  // Full projected-gradient step with the global step 1/||Q||_2, recomputed
  // from scratch; the cache goes stale.
  void full_projected_gradient_step() {
    const DenseVector qa = matvec(q_, alpha_);
    counter_.add(FlopCategory::kMatVec, size() * (2 * size() - 1));
    for (std::size_t i = 0; i < size(); ++i) {
      alpha_[i] = project_interval(alpha_[i] - (qa[i] - 1.0) / lip_global_, 0.0, c_);
    }
    counter_.add(FlopCategory::kVecVec, 3 * size());
    counter_.add(FlopCategory::kProx, size());
    cache_valid_ = false;
  }

  // ---- greedy scores (tally) ----
  DenseVector gs_scores(GreedyRule rule) {
    ensure_cache();
    DenseVector out(size());
    for (std::size_t i = 0; i < size(); ++i) {
      const double g = qalpha_[i] - 1.0;
      switch (rule) {
        case GreedyRule::kGsS:
          // minimal-norm subgradient against the active box faces
          if (alpha_[i] == 0.0) {
            out[i] = std::abs(std::min(g, 0.0));
          } else if (alpha_[i] == c_) {
            out[i] = std::abs(std::max(g, 0.0));
          } else {
            out[i] = std::abs(g);
          }
          break;
        case GreedyRule::kGsR: {
          check_diagonal(i);
          out[i] =
              std::abs(alpha_[i] - project_interval(alpha_[i] - g / q_(i, i), 0.0, c_));
          break;
        }
        case GreedyRule::kGsQ: {
          check_diagonal(i);
          const double d =
              project_interval(alpha_[i] - g / q_(i, i), 0.0, c_) - alpha_[i];
          out[i] = g * d + 0.5 * q_(i, i) * d * d;
          break;
        }
        default:
          fail("unsupported-rule", "svm supports gs-s, gs-r, gs-q");
      }
    }
    counter_.add(FlopCategory::kVecVec, 5 * size());
    counter_.add(FlopCategory::kProx, size());
    return out;
  }

  static SelectionSense greedy_sense(GreedyRule rule) {
    return rule == GreedyRule::kGsQ ? SelectionSense::kMin : SelectionSense::kMax;
  }

  // ---- generic block interface (scalar blocks) ----
  DenseVector block_value(std::size_t i) const {
    check_index(i);
    return {alpha_[i]};
  }

  void set_block(std::size_t i, const DenseVector& v) {
    check_index(i);
    require_same_size(v.size(), std::size_t{1}, "svm block");
    ensure_cache();
    apply_coordinate(i, v[0]);
  }

  DenseVector block_gradient(std::size_t i) {
    check_index(i);
    ensure_cache();
    counter_.add(FlopCategory::kScalar, 1);
    return {qalpha_[i] - 1.0};
  }

  DenseVector block_gradient_shifted(std::size_t i, const DenseVector& shifted) {
    check_index(i);
    require_same_size(shifted.size(), std::size_t{1}, "svm block");
    DenseVector g = block_gradient(i);
    g[0] += q_(i, i) * (shifted[0] - alpha_[i]);
    counter_.add(FlopCategory::kScalar, 3);
    return g;
  }

  SeparableRegularizer block_regularizer(std::size_t) const { return make_box_reg(0.0, c_); }

  double block_lipschitz(std::size_t i) const {
    check_index(i);
    check_diagonal(i);
    return q_(i, i);
  }

 private:
  void ensure_cache() {
    if (cache_valid_) return;
    qalpha_ = matvec(q_, alpha_);
    counter_.add(FlopCategory::kMatVec, size() * (2 * size() - 1));
    cache_valid_ = true;
  }

  void apply_coordinate(std::size_t i, double v) {
    const double delta = v - alpha_[i];
    if (delta == 0.0) return;
    const double* qrow = q_.row(i);  // symmetric: row i == column i
    for (std::size_t r = 0; r < qalpha_.size(); ++r) qalpha_[r] += delta * qrow[r];
    counter_.add(FlopCategory::kVecVec, 2 * qalpha_.size());
    alpha_[i] = v;
  }

  void check_index(std::size_t i) const {
    if (i >= alpha_.size()) fail("index", "coordinate " + std::to_string(i));
  }

  void check_diagonal(std::size_t i) const {
    if (q_(i, i) <= 1e-12) {
      fail("degenerate-diagonal", "Q_ii vanishes at " + std::to_string(i));
    }
  }

  DenseMatrix q_;
  double c_ = 1.0;
  DenseVector alpha_;
  DenseVector qalpha_;
  bool cache_valid_ = false;
  double lip_global_ = 0.0;
  FlopCounter counter_;
};

}  // namespace cdopt
