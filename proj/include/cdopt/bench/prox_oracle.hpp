#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "cdopt/errors.hpp"
#include "cdopt/linalg.hpp"

namespace cdopt {

// Exhaustive-search proximal oracle for one- and two-dimensional inputs.
// Minimizes scale * value(z) + 0.5 * ||z - y||^2 over a box by repeated grid
// refinement: after each pass the box shrinks to one grid cell on either side
// of the incumbent, so for convex objectives the true minimizer stays inside.
struct GridSpec {
  double lo = -10.0;
  double hi = 10.0;
  std::size_t steps = 64;        // grid points per axis = steps + 1
  std::size_t refinements = 8;   // accuracy ~ (hi - lo) * (2 / steps)^refinements
};

template <typename ValueFn>
DenseVector brute_prox_oracle(ValueFn&& value, const DenseVector& y, double scale,
                              const GridSpec& grid = {}) {
  const std::size_t n = y.size();
  if (n == 0 || n > 2) fail("shape", "grid oracle handles 1 or 2 dimensions, got " +
                                         std::to_string(n));
  if (!(grid.lo < grid.hi)) fail("empty-domain", "grid bounds must satisfy lo < hi");
  if (grid.steps < 4) fail("invalid-count", "grid needs at least 4 steps per axis");
  if (scale <= 0.0) fail("invalid-scale", "prox scale must be positive");

  DenseVector lo(n, grid.lo), hi(n, grid.hi);
  DenseVector best = y;
  for (std::size_t pass = 0; pass <= grid.refinements; ++pass) {
    DenseVector step(n);
    for (std::size_t d = 0; d < n; ++d) step[d] = (hi[d] - lo[d]) / double(grid.steps);
    double best_val = std::numeric_limits<double>::infinity();
    DenseVector z(n);
    const std::size_t jmax = n == 2 ? grid.steps : 0;
    for (std::size_t i = 0; i <= grid.steps; ++i) {
      z[0] = lo[0] + double(i) * step[0];
      for (std::size_t j = 0; j <= jmax; ++j) {
        if (n == 2) z[1] = lo[1] + double(j) * step[1];
        double obj = scale * value(z);
        for (std::size_t d = 0; d < n; ++d) obj += 0.5 * (z[d] - y[d]) * (z[d] - y[d]);
        if (obj < best_val) {
          best_val = obj;
          best = z;
        }
      }
    }
    if (!std::isfinite(best_val)) {
      fail("oracle-failure", "objective infinite on the whole grid; widen the bounds");
    }
    for (std::size_t d = 0; d < n; ++d) {
      lo[d] = best[d] - step[d];
      hi[d] = best[d] + step[d];
    }
  }
  return best;
}

}  // namespace cdopt
