#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cdopt/errors.hpp"
#include "cdopt/linalg.hpp"
#include "cdopt/prox.hpp"

namespace cdopt {

enum class SchemeKind {
  kExactMin,
  kProximalPoint,
  kProxLinear,
  kProxLinearExtrapolated,
  kStochasticProxLinear,
};

enum class VrMode { kNone, kSag, kSaga, kSvrg };

struct StepPolicy {
  enum class Kind { kFixed, kBlockLipschitzReciprocal, kArmijo };
  Kind kind = Kind::kBlockLipschitzReciprocal;
  double alpha = 0.0;       // fixed step / initial Armijo step
  double sigma = 0.01;      // Armijo sufficient-decrease fraction
  double backtrack = 0.5;   // Armijo step shrink factor
  int max_trials = 30;
};

struct SchemeConfig {
  SchemeKind scheme = SchemeKind::kProxLinear;
  StepPolicy step;
  double omega = 0.0;          // extrapolation weight
  VrMode vr_mode = VrMode::kNone;
  std::size_t batch_size = 1;
  std::size_t svrg_period = 0;  // anchor refresh cadence in updates; 0 = one pass
};

inline void validate_scheme(const SchemeConfig& c) {
  if (c.omega < 0.0) fail("invalid-step", "negative extrapolation weight");
  if (c.step.kind == StepPolicy::Kind::kFixed && c.step.alpha <= 0.0) {
    fail("invalid-step", "fixed step must be positive");
  }
  if (c.batch_size == 0) fail("empty-batch", "batch size zero");
  if (c.scheme != SchemeKind::kStochasticProxLinear &&
      (c.vr_mode != VrMode::kNone || c.batch_size != 1)) {
    fail("unsupported-scheme", "vr modes and batches only apply to the stochastic scheme");
  }
}

// x_hat = current + omega * (current - previous).
inline DenseVector extrapolate(const DenseVector& current, const DenseVector& previous,
                               double omega) {
  if (omega < 0.0) fail("invalid-step", "negative extrapolation weight");
  require_same_size(current.size(), previous.size(), "extrapolation operands");
  DenseVector out(current.size());
  for (std::size_t i = 0; i < current.size(); ++i) {
    out[i] = current[i] + omega * (current[i] - previous[i]);
  }
  return out;
}

// ---- generic single-block updates over duck-typed problems ----------------
//
// A problem participates by exposing (all per block i):
//   block_count(), block_value(i), set_block(i, v), block_gradient(i),
//   block_regularizer(i)
// and optionally
//   exact_block_min(i, prox_weight)            -- for exact/proximal-point steps
//   block_gradient_shifted(i, shifted_block)   -- for extrapolated steps

// Exact block minimization with an optional proximal anchor at the current
// value: argmin_v f(v, x_others) + r_i(v) + prox_weight/2 * ||v - x_i||^2.
template <class Problem>
void coordinate_argmin_step(Problem& p, std::size_t i, double prox_weight = 0.0) {
  if (prox_weight < 0.0) fail("invalid-step", "negative proximal weight");
  if constexpr (requires { p.exact_block_min(i, prox_weight); }) {
    p.set_block(i, p.exact_block_min(i, prox_weight));
  } else {
    fail("unsupported-scheme", "problem has no exact block minimizer");
  }
}

// One prox-linear (coordinate gradient) step with step size alpha:
// x_i <- prox_{alpha r_i}(x_i - alpha * grad_i f).
template <class Problem>
void prox_linear_step(Problem& p, std::size_t i, double alpha) {
  if (alpha <= 0.0) fail("invalid-step", "step must be positive");
  const DenseVector g = p.block_gradient(i);
  DenseVector y = p.block_value(i);
  require_same_size(y.size(), g.size(), "block gradient");
  for (std::size_t t = 0; t < y.size(); ++t) y[t] -= alpha * g[t];
  p.set_block(i, prox_apply(p.block_regularizer(i), y, alpha));
}

// Prox-linear step taken from the extrapolated point
// x_hat = x_i + omega * (x_i - previous_i), with the block partial gradient
// re-evaluated at x_hat.
template <class Problem>
void prox_linear_extrapolated_step(Problem& p, std::size_t i, double alpha, double omega,
                                   const DenseVector& previous_block) {
  if (alpha <= 0.0) fail("invalid-step", "step must be positive");
  const DenseVector hat = extrapolate(p.block_value(i), previous_block, omega);
  if constexpr (requires { p.block_gradient_shifted(i, hat); }) {
    const DenseVector g = p.block_gradient_shifted(i, hat);
    DenseVector y(hat.size());
    for (std::size_t t = 0; t < hat.size(); ++t) y[t] = hat[t] - alpha * g[t];
    p.set_block(i, prox_apply(p.block_regularizer(i), y, alpha));
  } else {
    fail("unsupported-scheme", "problem cannot evaluate gradients at shifted blocks");
  }
}

// Mean gradient over a sample batch at an arbitrary point, for problems whose
// smooth part is a finite sample average.
template <class Problem>
DenseVector minibatch_gradient(const Problem& p, const DenseVector& point,
                               const std::vector<std::size_t>& batch) {
  if (batch.empty()) fail("empty-batch", "minibatch gradient over empty sample set");
  if constexpr (requires { p.sample_gradient(std::size_t{0}, point); }) {
    DenseVector g(point.size(), 0.0);
    for (std::size_t j : batch) {
      if (j >= p.sample_count()) {
        fail("index", "sample " + std::to_string(j) + " out of " +
                          std::to_string(p.sample_count()));
      }
      axpy(1.0 / static_cast<double>(batch.size()), p.sample_gradient(j, point), g);
    }
    return g;
  } else {
    fail("unsupported-scheme", "problem has no per-sample gradients");
  }
}

// Decaying stochastic step alpha_k = alpha0 / (1 + k/m); m is the sample count.
inline double sgd_decayed_step(double alpha0, std::size_t k, std::size_t m) {
  if (alpha0 <= 0.0) fail("invalid-step", "step must be positive");
  if (m == 0) fail("invalid-count", "sample count zero");
  return alpha0 / (1.0 + static_cast<double>(k) / static_cast<double>(m));
}

}  // namespace cdopt
