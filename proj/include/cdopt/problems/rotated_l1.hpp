#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "cdopt/errors.hpp"
#include "cdopt/linalg.hpp"

namespace cdopt {

// Nonsmooth two-variable demo: l(u, v) = |u| + 2|v| evaluated on coordinates
// rotated by eps,
//   f_eps(x, y) = |cos(eps) x + sin(eps) y| + 2 |cos(eps) y - sin(eps) x|.
// At eps = 0 coordinate minimization solves it in one sweep; at eps = pi/4 it
// stalls at a non-optimal point (the classical counterexample for coordinate
// minimization on nonseparable nonsmooth functions); small rotations converge.
class RotatedL1Problem {
 public:
  RotatedL1Problem(double eps, double x0, double y0) : eps_(eps), x_{x0, y0} {}

  double eps() const { return eps_; }
  const DenseVector& point() const { return x_; }
  std::size_t block_count() const { return 2; }

  double objective() const { return objective_at(x_[0], x_[1]); }

  double objective_at(double x, double y) const {
    const double c = std::cos(eps_);
    const double s = std::sin(eps_);
    return std::abs(c * x + s * y) + 2.0 * std::abs(c * y - s * x);
  }

  // Exact minimizer over one coordinate with the other held fixed. The
  // restriction is convex piecewise linear with at most two breakpoints (where
  // either absolute-value argument vanishes), so the minimum sits at a
  // breakpoint; ties resolve to the breakpoint nearer the current value.
  double coordinate_min(std::size_t which) const {
    check_index(which);
    const double c = std::cos(eps_);
    const double s = std::sin(eps_);
    const double cur = x_[which];
    // Restriction in t: |a1 t + b1| + 2 |a2 t + b2|.
    double a1, b1, a2, b2;
    if (which == 0) {
      a1 = c, b1 = s * x_[1];
      a2 = -s, b2 = c * x_[1];
    } else {
      a1 = s, b1 = c * x_[0];
      a2 = c, b2 = -s * x_[0];
    }
    double best = cur;
    double best_val = eval_restriction(a1, b1, a2, b2, cur);
    for (double t : {breakpoint(a1, b1), breakpoint(a2, b2)}) {
      if (!std::isfinite(t)) continue;
      const double v = eval_restriction(a1, b1, a2, b2, t);
      const double tol = 1e-12 * (1.0 + std::abs(best_val));
      if (v < best_val - tol ||
          (std::abs(v - best_val) <= tol && std::abs(t - cur) < std::abs(best - cur))) {
        best = t;
        best_val = v;
      }
    }
    return best;
  }

  void update_coordinate(std::size_t which) { x_[which] = coordinate_min(which); }

  // ---- generic block interface (scalar blocks, exact minimization only) ----
  DenseVector block_value(std::size_t i) const {
    check_index(i);
    return {x_[i]};
  }

  void set_block(std::size_t i, const DenseVector& v) {
    check_index(i);
    require_same_size(v.size(), std::size_t{1}, "rotated-l1 block");
    x_[i] = v[0];
  }

  DenseVector exact_block_min(std::size_t i, double prox_weight) const {
    if (prox_weight != 0.0) {
      fail("unsupported-scheme", "rotated-l1 exact minimization has no proximal variant");
    }
    return {coordinate_min(i)};
  }

 private:
  static double breakpoint(double a, double b) {
    if (a == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return -b / a;
  }

  static double eval_restriction(double a1, double b1, double a2, double b2, double t) {
    return std::abs(a1 * t + b1) + 2.0 * std::abs(a2 * t + b2);
  }

  void check_index(std::size_t i) const {
    if (i >= 2) fail("index", "block " + std::to_string(i));
  }

  double eps_;
  DenseVector x_;
};

// Free-function form of the exact coordinate minimizer.
inline double rotated_l1_coord_min(double eps, const DenseVector& point, std::size_t which) {
  require_same_size(point.size(), std::size_t{2}, "rotated-l1 point");
  RotatedL1Problem p(eps, point[0], point[1]);
  return p.coordinate_min(which);
}

}  // namespace cdopt
