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

// min_x ||x||_1 + lambda/2 ||A x - b||^2, one coordinate per block. The
// residual r = A x - b is the coordinate-friendly cache: a coordinate change
// moves r along one column of A, so an update costs O(m) against O(mn) for
// the full proximal-gradient step.
class LassoProblem {
 public:
  LassoProblem(const DenseMatrix& a, DenseVector b, double lambda)
      : at_(a.transposed()), b_(std::move(b)) {
    require_same_size(a.rows(), b_.size(), "lasso rows");
    if (a.rows() == 0 || a.cols() == 0) fail("shape", "empty design matrix");
    set_lambda(lambda);
    col_sq_.resize(at_.rows());
    for (std::size_t j = 0; j < at_.rows(); ++j) {
      col_sq_[j] = norm_sq(at_.col_row_view(j));
    }
    x_.assign(at_.rows(), 0.0);
    r_ = scaled(b_, -1.0);  // A*0 - b
    r_valid_ = true;
    spectral_sq_ = spectral_norm_sq(a, 1000, 1e-12);
  }

  std::size_t samples() const { return b_.size(); }
  std::size_t dimension() const { return x_.size(); }
  std::size_t block_count() const { return x_.size(); }
  const DenseVector& point() const { return x_; }
  double lambda() const { return lambda_; }
  double global_lipschitz() const { return lambda_ * spectral_sq_; }
  double column_lipschitz(std::size_t j) const { return lambda_ * col_sq_[j]; }
  FlopCounter& counter() { return counter_; }

  // Continuation swaps the data-fit weight in place; caches are unaffected
  // (they only depend on A, b, x).
  void set_lambda(double lambda) {
    if (lambda <= 0.0) fail("invalid-weight", "lambda must be positive");
    lambda_ = lambda;
  }

  // ---- observers (never tally) ----
  double objective() const {
    const DenseVector r = r_valid_ ? r_ : fresh_residual();
    return l1_norm(x_) + 0.5 * lambda_ * norm_sq(r);
  }

  DenseVector full_gradient_observer() const {
    const DenseVector r = r_valid_ ? r_ : fresh_residual();
    DenseVector g(x_.size());
    for (std::size_t j = 0; j < x_.size(); ++j) {
      g[j] = lambda_ * dot_row(at_.row(j), r);
    }
    return g;
  }

  // || x - prox_{(1/L)||.||_1}(x - (1/L) grad f) ||_2
  double gradient_map_norm() const {
    const double lip = global_lipschitz();
    const DenseVector g = full_gradient_observer();
    double s = 0.0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      const double d = x_[j] - shrink(x_[j] - g[j] / lip, 1.0 / lip);
      s += d * d;
    }
    return std::sqrt(s);
  }

  double cache_drift() const {
    if (!r_valid_) return 0.0;
    const DenseVector fresh = fresh_residual();
    double d = 0.0;
    for (std::size_t i = 0; i < r_.size(); ++i) d = std::max(d, std::abs(fresh[i] - r_[i]));
    return d;
  }

  // ---- updates (tally) ----

  // x_j <- shrink(x_j - A_j^T r / ||A_j||^2, 1 / (lambda ||A_j||^2)).
  void coordinate_step(std::size_t j) {
    check_index(j);
    check_column(j);
    ensure_residual();
    const double* col = at_.row(j);
    double t = 0.0;
    for (std::size_t i = 0; i < r_.size(); ++i) t += col[i] * r_[i];
    counter_.add(FlopCategory::kVecVec, 2 * r_.size() - 1);
    const double v = shrink(x_[j] - t / col_sq_[j], 1.0 / (lambda_ * col_sq_[j]));
    counter_.add(FlopCategory::kScalar, 3);
    counter_.add(FlopCategory::kProx, 1);
    apply_coordinate(j, v);
  }

  // Full map T(x) = prox_{(1/L)||.||_1}(x - (1/L) lambda A^T (A x - b)),
  // everything recomputed from scratch; the residual cache goes stale.
  void full_prox_gradient_step() {
    const DenseVector r = fresh_residual();
    counter_.add(FlopCategory::kMatVec, 2 * samples() * dimension() + samples());
    const double lip = global_lipschitz();
    for (std::size_t j = 0; j < x_.size(); ++j) {
      const double g = lambda_ * dot_row(at_.row(j), r);
      x_[j] = shrink(x_[j] - g / lip, 1.0 / lip);
    }
    counter_.add(FlopCategory::kMatVec, dimension() * 2 * samples());
    counter_.add(FlopCategory::kVecVec, 2 * dimension());
    counter_.add(FlopCategory::kProx, dimension());
    r_valid_ = false;
  }

  // ---- greedy scores (tally) ----
  DenseVector gs_scores(GreedyRule rule) {
    ensure_residual();
    const double lip = global_lipschitz();
    DenseVector out(x_.size());
    for (std::size_t j = 0; j < x_.size(); ++j) {
      const double g = lambda_ * dot_row(at_.row(j), r_);
      switch (rule) {
        case GreedyRule::kGsS:
          out[j] = x_[j] != 0.0 ? std::abs(g + sign(x_[j])) : std::abs(shrink(g, 1.0));
          break;
        case GreedyRule::kGsR: {
          out[j] = std::abs(x_[j] - shrink(x_[j] - g / lip, 1.0 / lip));
          break;
        }
        case GreedyRule::kGsQ: {
          const double d = shrink(x_[j] - g / lip, 1.0 / lip) - x_[j];
          out[j] = g * d + 0.5 * lip * d * d + std::abs(x_[j] + d) - std::abs(x_[j]);
          break;
        }
        case GreedyRule::kMbi: {
          check_column(j);
          const double lj = lambda_ * col_sq_[j];
          const double t = shrink(x_[j] - g / lj, 1.0 / lj);
          const double d = t - x_[j];
          // objective change under exact minimization (constant dropped)
          out[j] = g * d + 0.5 * lj * d * d + std::abs(t) - std::abs(x_[j]);
          break;
        }
        default:
          fail("unsupported-rule", "lasso supports gs-s, gs-r, gs-q, mbi");
      }
    }
    counter_.add(FlopCategory::kMatVec, dimension() * 2 * samples());
    counter_.add(FlopCategory::kVecVec, 6 * dimension());
    counter_.add(FlopCategory::kProx, dimension());
    return out;
  }

  static SelectionSense greedy_sense(GreedyRule rule) {
    return (rule == GreedyRule::kGsQ || rule == GreedyRule::kMbi) ? SelectionSense::kMin
                                                                  : SelectionSense::kMax;
  }

  // ---- per-sample view for the stochastic schemes ----
  // f(x) = (1/m) sum_i f_i with f_i = m*lambda/2 (a_i^T x - b_i)^2.
  std::size_t sample_count() const { return samples(); }

  DenseVector sample_gradient(std::size_t i, const DenseVector& point) const {
    if (i >= samples()) fail("index", "sample " + std::to_string(i));
    require_same_size(point.size(), dimension(), "sample gradient point");
    double margin = 0.0;
    for (std::size_t j = 0; j < dimension(); ++j) margin += at_(j, i) * point[j];
    const double coef = static_cast<double>(samples()) * lambda_ * (margin - b_[i]);
    DenseVector g(dimension());
    for (std::size_t j = 0; j < dimension(); ++j) g[j] = coef * at_(j, i);
    return g;
  }

  // ---- generic block interface (scalar blocks) ----
  DenseVector block_value(std::size_t j) const {
    check_index(j);
    return {x_[j]};
  }

  void set_block(std::size_t j, const DenseVector& v) {
    check_index(j);
    require_same_size(v.size(), std::size_t{1}, "lasso block");
    ensure_residual();
    apply_coordinate(j, v[0]);
  }

  DenseVector block_gradient(std::size_t j) {
    check_index(j);
    ensure_residual();
    counter_.add(FlopCategory::kVecVec, 2 * samples());
    return {lambda_ * dot_row(at_.row(j), r_)};
  }

  DenseVector block_gradient_shifted(std::size_t j, const DenseVector& shifted) {
    require_same_size(shifted.size(), std::size_t{1}, "lasso block");
    DenseVector g = block_gradient(j);
    g[0] += lambda_ * col_sq_[j] * (shifted[0] - x_[j]);
    counter_.add(FlopCategory::kScalar, 3);
    return g;
  }

  SeparableRegularizer block_regularizer(std::size_t) const { return make_l1_reg(1.0); }

  double block_lipschitz(std::size_t j) const {
    check_index(j);
    return lambda_ * col_sq_[j];
  }

  // Exact coordinate minimizer with an optional proximal anchor.
  DenseVector exact_block_min(std::size_t j, double prox_weight) {
    check_index(j);
    check_column(j);
    if (prox_weight < 0.0) fail("invalid-step", "negative proximal weight");
    ensure_residual();
    const double g = lambda_ * dot_row(at_.row(j), r_);
    counter_.add(FlopCategory::kVecVec, 2 * samples());
    const double denom = lambda_ * col_sq_[j] + prox_weight;
    counter_.add(FlopCategory::kScalar, 4);
    counter_.add(FlopCategory::kProx, 1);
    return {shrink(x_[j] - g / denom, 1.0 / denom)};
  }

 private:
  // thin helper so column rows can be treated as vectors
  struct ColMatrix : DenseMatrix {
    ColMatrix() = default;
    ColMatrix(DenseMatrix m) : DenseMatrix(std::move(m)) {}
    DenseVector col_row_view(std::size_t j) const {
      return DenseVector(row(j), row(j) + cols());
    }
  };

  static double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

  DenseVector fresh_residual() const {
    DenseVector r = scaled(b_, -1.0);
    for (std::size_t j = 0; j < x_.size(); ++j) {
      if (x_[j] == 0.0) continue;
      const double* col = at_.row(j);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] += x_[j] * col[i];
    }
    return r;
  }

  void ensure_residual() {
    if (r_valid_) return;
    r_ = fresh_residual();
    counter_.add(FlopCategory::kMatVec, 2 * samples() * dimension() + samples());
    r_valid_ = true;
  }

  void apply_coordinate(std::size_t j, double v) {
    const double delta = v - x_[j];
    if (delta != 0.0) {
      const double* col = at_.row(j);
      for (std::size_t i = 0; i < r_.size(); ++i) r_[i] += delta * col[i];
      counter_.add(FlopCategory::kVecVec, 2 * r_.size());
      x_[j] = v;
    }
  }

  void check_index(std::size_t j) const {
    if (j >= x_.size()) fail("index", "coordinate " + std::to_string(j));
  }

  void check_column(std::size_t j) const {
    if (col_sq_[j] <= 1e-24) {
      fail("degenerate-column", "column " + std::to_string(j) + " has no mass");
    }
  }

  ColMatrix at_;  // n x m, row j holds column j of A
  DenseVector b_;
  double lambda_ = 1.0;
  DenseVector col_sq_;
  DenseVector x_;
  DenseVector r_;  // A x - b
  bool r_valid_ = false;
  double spectral_sq_ = 0.0;  // ||A||_2^2
  FlopCounter counter_;
};

// Geometric warm-start ladder lambda0, eta*lambda0, ... capped at exactly
// lambda_target. Solving the cheap small-lambda problems first and warm
// starting each stage from the last is much faster than attacking the target
// lambda cold.
inline DenseVector continuation_schedule(double lambda0, double eta, double lambda_target) {
  if (lambda0 <= 0.0 || lambda_target <= 0.0) fail("invalid-weight", "lambdas must be positive");
  if (eta <= 1.0) fail("invalid-continuation", "eta must exceed 1, got " + std::to_string(eta));
  if (lambda0 > lambda_target) {
    fail("invalid-continuation", "lambda0 exceeds the target");
  }
  DenseVector ladder;
  double lam = lambda0;
  while (lam < lambda_target) {
    ladder.push_back(lam);
    lam *= eta;
  }
  ladder.push_back(lambda_target);
  return ladder;
}

}  // namespace cdopt
