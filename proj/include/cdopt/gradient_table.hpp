#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cdopt/errors.hpp"
#include "cdopt/linalg.hpp"

namespace cdopt {

// Per-sample gradient memory backing the variance-reduced estimators. Slots
// start at zero; the running average is maintained incrementally so estimate
// calls stay O(dim).
class GradientTable {
 public:
  GradientTable(std::size_t count, std::size_t dim)
      : grads_(count, DenseVector(dim, 0.0)), average_(dim, 0.0) {
    if (count == 0 || dim == 0) fail("invalid-count", "gradient table needs count and dim >= 1");
  }

  std::size_t count() const { return grads_.size(); }
  std::size_t dim() const { return average_.size(); }

  const DenseVector& slot(std::size_t j) const {
    check_index(j);
    return grads_[j];
  }

  const DenseVector& average() const { return average_; }

  void set_slot(std::size_t j, const DenseVector& g) {
    check_index(j);
    require_same_size(g.size(), dim(), "gradient slot");
    for (std::size_t i = 0; i < g.size(); ++i) {
      average_[i] += (g[i] - grads_[j][i]) / static_cast<double>(count());
    }
    grads_[j] = g;
  }

  // (new - old_j)/m + average, then the slot is overwritten.
  DenseVector sag_estimate(std::size_t j, const DenseVector& new_grad) {
    check_index(j);
    require_same_size(new_grad.size(), dim(), "sag gradient");
    const double m = static_cast<double>(count());
    DenseVector est(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      est[i] = (new_grad[i] - grads_[j][i]) / m + average_[i];
    }
    set_slot(j, new_grad);
    return est;
  }

  // new - old_j + average (unbiased), then the slot is overwritten.
  DenseVector saga_estimate(std::size_t j, const DenseVector& new_grad) {
    check_index(j);
    require_same_size(new_grad.size(), dim(), "saga gradient");
    DenseVector est(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      est[i] = new_grad[i] - grads_[j][i] + average_[i];
    }
    set_slot(j, new_grad);
    return est;
  }

  // Freeze the anchor point together with its per-sample gradients.
  void set_anchor(DenseVector anchor_point, const std::vector<DenseVector>& anchor_grads) {
    if (anchor_grads.size() != count()) {
      fail("shape", "anchor gradient count " + std::to_string(anchor_grads.size()) +
                        " vs table count " + std::to_string(count()));
    }
    anchor_average_.assign(dim(), 0.0);
    for (const DenseVector& g : anchor_grads) {
      require_same_size(g.size(), dim(), "anchor gradient");
      axpy(1.0 / static_cast<double>(count()), g, anchor_average_);
    }
    anchor_point_ = std::move(anchor_point);
    has_anchor_ = true;
  }

  bool has_anchor() const { return has_anchor_; }

  const DenseVector& anchor_point() const {
    if (!has_anchor_) fail("no-anchor", "anchor point requested before set_anchor");
    return anchor_point_;
  }

  // grad_at_x - grad_at_anchor + mean of anchor gradients. Doesn't touch the
  // slots; the anchor is refreshed separately by set_anchor.
  DenseVector svrg_estimate(std::size_t j, const DenseVector& grad_at_x,
                            const DenseVector& grad_at_anchor) const {
    check_index(j);
    if (!has_anchor_) fail("no-anchor", "svrg estimate before set_anchor");
    require_same_size(grad_at_x.size(), dim(), "svrg gradient");
    require_same_size(grad_at_anchor.size(), dim(), "svrg anchor gradient");
    DenseVector est(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      est[i] = grad_at_x[i] - grad_at_anchor[i] + anchor_average_[i];
    }
    return est;
  }

 private:
  void check_index(std::size_t j) const {
    if (j >= grads_.size()) {
      fail("index", "slot " + std::to_string(j) + " out of " + std::to_string(grads_.size()));
    }
  }

  std::vector<DenseVector> grads_;
  DenseVector average_;
  DenseVector anchor_point_;
  DenseVector anchor_average_;
  bool has_anchor_ = false;
};

}  // namespace cdopt
