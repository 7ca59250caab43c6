#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "cdopt/bench/generators.hpp"
#include "cdopt/errors.hpp"
#include "cdopt/linalg.hpp"
#include "cdopt/prox.hpp"
#include "cdopt/spectral.hpp"

namespace cdopt {

// High-accuracy baselines the coordinate solvers are measured against.
// Accelerated proximal gradient with adaptive restart; the extrapolate
// toggle falls back to the plain (unaccelerated) method, which must reach
// the same point -- a cheap cross-check that acceleration only changes
// speed, not the answer.

struct ReferenceOptions {
  double tol = 1e-10;
  std::size_t max_iters = 200000;
  bool extrapolate = true;
};

struct ReferenceResult {
  DenseVector point;
  double objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// step(y) performs one prox-gradient step from y; metric(x) is the
// convergence measure (same definition the matching solver reports).
template <typename StepFn, typename MetricFn, typename ObjFn>
ReferenceResult accelerated_prox_gradient(DenseVector x0, StepFn&& step, MetricFn&& metric,
                                          ObjFn&& objective, const ReferenceOptions& opts) {
  DenseVector x_prev = x0;
  DenseVector y = std::move(x0);
  double t = 1.0;
  ReferenceResult res;
  for (std::size_t it = 1; it <= opts.max_iters; ++it) {
    DenseVector x_new = step(y);
    if (metric(x_new) <= opts.tol) {
      res.point = std::move(x_new);
      res.iterations = it;
      res.converged = true;
      res.objective = objective(res.point);
      return res;
    }
    if (!opts.extrapolate) {
      y = x_new;
    } else if (dot(vec_sub(y, x_new), vec_sub(x_new, x_prev)) > 0.0) {
      // restart: momentum points uphill, drop it
      t = 1.0;
      y = x_new;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      const double beta = (t - 1.0) / t_next;
      y = vec_add(x_new, scaled(vec_sub(x_new, x_prev), beta));
      t = t_next;
    }
    x_prev = std::move(x_new);
  }
  res.point = std::move(x_prev);
  res.iterations = opts.max_iters;
  res.converged = false;
  res.objective = objective(res.point);
  return res;
}

inline ReferenceResult reference_solve(const LassoInstance& inst,
                                       const ReferenceOptions& opts = {}) {
  const DenseMatrix& a = inst.a;
  const double lambda = inst.lambda;
  const double lip = lambda * spectral_norm_sq(a, 1000, 1e-12);
  if (lip <= 0.0) fail("invalid-lipschitz", "zero design matrix");
  auto grad = [&](const DenseVector& p) {
    DenseVector r = matvec(a, p);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= inst.b[i];
    return scaled(matvec_transposed(a, r), lambda);
  };
  auto step = [&](const DenseVector& y) {
    const DenseVector g = grad(y);
    DenseVector out(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) out[j] = shrink(y[j] - g[j] / lip, 1.0 / lip);
    return out;
  };
  auto metric = [&](const DenseVector& p) {
    const DenseVector g = grad(p);
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double d = p[j] - shrink(p[j] - g[j] / lip, 1.0 / lip);
      s += d * d;
    }
    return std::sqrt(s);
  };
  auto objective = [&](const DenseVector& p) {
    DenseVector r = matvec(a, p);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= inst.b[i];
    return l1_norm(p) + 0.5 * lambda * norm_sq(r);
  };
  return accelerated_prox_gradient(DenseVector(a.cols(), 0.0), step, metric, objective, opts);
}

// Unregularized least squares min 0.5 ||a x - b||^2.
inline ReferenceResult reference_solve(const DenseMatrix& a, const DenseVector& b,
                                       const ReferenceOptions& opts = {}) {
  require_same_size(a.rows(), b.size(), "least-squares reference");
  const double lip = spectral_norm_sq(a, 1000, 1e-12);
  if (lip <= 0.0) fail("invalid-lipschitz", "zero design matrix");
  auto grad = [&](const DenseVector& p) {
    DenseVector r = matvec(a, p);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return matvec_transposed(a, r);
  };
  auto step = [&](const DenseVector& y) {
    const DenseVector g = grad(y);
    DenseVector out(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) out[j] = y[j] - g[j] / lip;
    return out;
  };
  auto metric = [&](const DenseVector& p) { return norm2(grad(p)) / lip; };
  auto objective = [&](const DenseVector& p) {
    DenseVector r = matvec(a, p);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return 0.5 * norm_sq(r);
  };
  return accelerated_prox_gradient(DenseVector(a.cols(), 0.0), step, metric, objective, opts);
}

inline ReferenceResult reference_solve(const LogisticInstance& inst,
                                       const ReferenceOptions& opts = {}) {
  const DenseMatrix& x = inst.x;
  const DenseVector& y = inst.y;
  const double c = inst.c;
  const double lip = 0.25 * c * spectral_norm_sq(x, 1000, 1e-12);
  if (lip <= 0.0) fail("invalid-lipschitz", "zero feature matrix");
  auto margins = [&](const DenseVector& w) {
    DenseVector e(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) e[i] = std::exp(-y[i] * dot_row(x.row(i), w));
    return e;
  };
  auto grad = [&](const DenseVector& w) {
    const DenseVector e = margins(w);
    DenseVector g(w.size(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const double coef = c * y[i] * (1.0 / (1.0 + e[i]) - 1.0);
      const double* row = x.row(i);
      for (std::size_t j = 0; j < w.size(); ++j) g[j] += coef * row[j];
    }
    return g;
  };
  auto step = [&](const DenseVector& w) {
    const DenseVector g = grad(w);
    DenseVector out(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) out[j] = shrink(w[j] - g[j] / lip, 1.0 / lip);
    return out;
  };
  auto metric = [&](const DenseVector& w) {
    const DenseVector g = grad(w);
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double d = w[j] - shrink(w[j] - g[j] / lip, 1.0 / lip);
      s += d * d;
    }
    return std::sqrt(s);
  };
  auto objective = [&](const DenseVector& w) {
    const DenseVector e = margins(w);
    double loss = 0.0;
    for (double v : e) loss += std::log1p(v);
    return l1_norm(w) + c * loss;
  };
  return accelerated_prox_gradient(DenseVector(x.cols(), 0.0), step, metric, objective, opts);
}

// The factorization objective is nonconvex; a prox-gradient baseline would
// certify nothing, so asking for one is an error rather than a wrong answer.
inline ReferenceResult reference_solve(const NmfInstance&, const ReferenceOptions& = {}) {
  fail("unsupported-reference", "no certified baseline for a nonconvex objective");
}

inline ReferenceResult reference_solve(const SvmInstance& inst,
                                       const ReferenceOptions& opts = {}) {
  const DenseMatrix& q = inst.q;
  const double c = inst.c;
  const std::size_t m = q.rows();
  const double lip = std::sqrt(spectral_norm_sq(q, 1000, 1e-12));
  if (lip <= 0.0) fail("invalid-lipschitz", "zero kernel matrix");
  auto grad = [&](const DenseVector& alpha) {
    DenseVector g = matvec(q, alpha);
    for (double& v : g) v -= 1.0;
    return g;
  };
  auto step = [&](const DenseVector& alpha) {
    const DenseVector g = grad(alpha);
    DenseVector out(m);
    for (std::size_t i = 0; i < m; ++i) {
      out[i] = project_interval(alpha[i] - g[i] / lip, 0.0, c);
    }
    return out;
  };
  // same per-coordinate measure the dual solver reports
  auto metric = [&](const DenseVector& alpha) {
    const DenseVector g = grad(alpha);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = alpha[i] - project_interval(alpha[i] - g[i] / q(i, i), 0.0, c);
      s += d * d;
    }
    return std::sqrt(s);
  };
  auto objective = [&](const DenseVector& alpha) {
    const DenseVector qa = matvec(q, alpha);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += 0.5 * alpha[i] * qa[i] - alpha[i];
    return s;
  };
  return accelerated_prox_gradient(DenseVector(m, 0.0), step, metric, objective, opts);
}

}  // namespace cdopt
