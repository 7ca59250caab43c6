#pragma once

#include <cstddef>
#include <string>

#include "cdopt/errors.hpp"
#include "cdopt/linalg.hpp"

namespace cdopt {

// Exact minimizer of beta * sum_i |x_{i+1} - x_i| + 1/2 ||x - y||^2.
//
// Direct taut-string style sweep: walk forward keeping the running segment's
// admissible value range [vmin, vmax]; when a jump must occur, flush the
// segment at the saturated bound and restart after it. Single pass with
// backtracking only at flushes; exact up to floating point.
inline DenseVector prox_tv1d(const DenseVector& y, double beta) {
  if (beta < 0.0) fail("invalid-weight", "tv prox with negative weight " + std::to_string(beta));
  const std::size_t n = y.size();
  DenseVector x(n);
  if (n == 0) return x;
  if (beta == 0.0 || n == 1) return y;

  std::size_t k = 0;       // current scan position
  std::size_t k0 = 0;      // start of the unresolved segment
  std::size_t kminus = 0;  // last point where the lower string touched its bound
  std::size_t kplus = 0;   // last point where the upper string touched its bound
  double vmin = y[0] - beta;
  double vmax = y[0] + beta;
  double umin = beta;   // slack of the lower string
  double umax = -beta;  // slack of the upper string

  for (;;) {
    while (k == n - 1) {
      if (umin < 0.0) {  // lower string breaks: the segment ends with a down jump
        do x[k0++] = vmin;
        while (k0 <= kminus);
        kminus = k = k0;
        vmin = y[k];
        umin = beta;
        umax = y[k] + beta - vmax;
      } else if (umax > 0.0) {  // upper string breaks: up jump
        do x[k0++] = vmax;
        while (k0 <= kplus);
        kplus = k = k0;
        vmax = y[k];
        umax = -beta;
        umin = y[k] - beta - vmin;
      } else {  // tail segment is flat
        vmin += umin / static_cast<double>(k - k0 + 1);
        do x[k0++] = vmin;
        while (k0 <= k);
        return x;
      }
    }
    if ((umin += y[k + 1] - vmin) < -beta) {  // forced down jump at kminus
      do x[k0++] = vmin;
      while (k0 <= kminus);
      kplus = kminus = k = k0;
      vmin = y[k];
      vmax = y[k] + 2.0 * beta;
      umin = beta;
      umax = -beta;
    } else if ((umax += y[k + 1] - vmax) > beta) {  // forced up jump at kplus
      do x[k0++] = vmax;
      while (k0 <= kplus);
      kplus = kminus = k = k0;
      vmin = y[k] - 2.0 * beta;
      vmax = y[k];
      umin = beta;
      umax = -beta;
    } else {  // extend the segment, re-tightening the strings if they sag
      ++k;
      if (umin >= beta) {
        vmin += (umin - beta) / static_cast<double>((kminus = k) - k0 + 1);
        umin = beta;
      }
      if (umax <= -beta) {
        vmax += (umax + beta) / static_cast<double>((kplus = k) - k0 + 1);
        umax = -beta;
      }
    }
  }
}

}  // namespace cdopt
