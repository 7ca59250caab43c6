#include <cstddef>
#include <vector>

#include <gtest/gtest.h>

#include "cdopt/gradient_table.hpp"
#include "cdopt/rng.hpp"
#include "cdopt/schemes.hpp"

namespace cdopt {
namespace {

// Smallest problem the generic steps can drive: f(x) = 1/2 ||x - c||^2 with
// scalar blocks, l1 regularizer of weight w, and per-sample pulls toward a_j.
struct ToyProblem {
  DenseVector x;
  DenseVector c;
  DenseVector a;
  double w = 1.0;

  std::size_t block_count() const { return x.size(); }
  DenseVector block_value(std::size_t i) const { return {x[i]}; }
  void set_block(std::size_t i, const DenseVector& v) { x[i] = v[0]; }
  DenseVector block_gradient(std::size_t i) const { return {x[i] - c[i]}; }
  SeparableRegularizer block_regularizer(std::size_t) const { return make_l1_reg(w); }
  DenseVector exact_block_min(std::size_t i, double prox_weight) const {
    return {shrink(c[i] + prox_weight * x[i], w) / (1.0 + prox_weight)};
  }
  DenseVector block_gradient_shifted(std::size_t i, const DenseVector& hat) const {
    return {hat[0] - c[i]};
  }
  std::size_t sample_count() const { return a.size(); }
  DenseVector sample_gradient(std::size_t j, const DenseVector& point) const {
    DenseVector g(point.size());
    for (std::size_t t = 0; t < point.size(); ++t) g[t] = point[t] - a[j];
    return g;
  }
};

struct BareProblem {
  DenseVector x{0.0};
  std::size_t block_count() const { return 1; }
  DenseVector block_value(std::size_t) const { return x; }
  void set_block(std::size_t, const DenseVector& v) { x = v; }
  DenseVector block_gradient(std::size_t) const { return {x[0]}; }
  SeparableRegularizer block_regularizer(std::size_t) const { return make_zero_reg(); }
};

TEST(ValidateScheme, AcceptsAndRejects) {
  SchemeConfig ok;
  ok.scheme = SchemeKind::kProxLinear;
  EXPECT_NO_THROW(validate_scheme(ok));

  SchemeConfig neg = ok;
  neg.omega = -0.1;
  EXPECT_THROW(validate_scheme(neg), Error);

  SchemeConfig fixed = ok;
  fixed.step.kind = StepPolicy::Kind::kFixed;
  fixed.step.alpha = 0.0;
  EXPECT_THROW(validate_scheme(fixed), Error);

  SchemeConfig batch0 = ok;
  batch0.batch_size = 0;
  EXPECT_THROW(validate_scheme(batch0), Error);

  SchemeConfig vr_on_deterministic = ok;
  vr_on_deterministic.vr_mode = VrMode::kSaga;
  EXPECT_THROW(validate_scheme(vr_on_deterministic), Error);

  SchemeConfig batch_on_deterministic = ok;
  batch_on_deterministic.batch_size = 4;
  EXPECT_THROW(validate_scheme(batch_on_deterministic), Error);

  SchemeConfig stochastic;
  stochastic.scheme = SchemeKind::kStochasticProxLinear;
  stochastic.step.kind = StepPolicy::Kind::kFixed;
  stochastic.step.alpha = 0.1;
  stochastic.vr_mode = VrMode::kSvrg;
  EXPECT_NO_THROW(validate_scheme(stochastic));
}

TEST(Extrapolate, FormulaAndErrors) {
  const DenseVector hat = extrapolate({2.0, 0.0}, {1.0, 1.0}, 0.5);
  EXPECT_DOUBLE_EQ(hat[0], 2.5);
  EXPECT_DOUBLE_EQ(hat[1], -0.5);
  EXPECT_EQ(extrapolate({2.0}, {1.0}, 0.0), DenseVector{2.0});
  EXPECT_THROW(extrapolate({1.0}, {1.0}, -0.2), Error);
  EXPECT_THROW(extrapolate({1.0, 2.0}, {1.0}, 0.5), Error);
}

TEST(ProxLinearStep, GradientThenShrink) {
  ToyProblem p{{0.0}, {3.0}, {}, 1.0};
  prox_linear_step(p, 0, 0.5);
  // y = 0 - 0.5*(0-3) = 1.5, then shrink by 0.5*1
  EXPECT_DOUBLE_EQ(p.x[0], 1.0);
  EXPECT_THROW(prox_linear_step(p, 0, 0.0), Error);
  EXPECT_THROW(prox_linear_step(p, 0, -1.0), Error);
}

TEST(CoordinateArgminStep, ExactAndProximal) {
  ToyProblem p{{0.0}, {3.0}, {}, 1.0};
  coordinate_argmin_step(p, 0);
  EXPECT_DOUBLE_EQ(p.x[0], 2.0);  // shrink(3, 1)
  p.x[0] = 0.0;
  coordinate_argmin_step(p, 0, 1.0);
  EXPECT_DOUBLE_EQ(p.x[0], 1.0);  // shrink(3 + 0, 1) / 2
  EXPECT_THROW(coordinate_argmin_step(p, 0, -1.0), Error);
  BareProblem bare;
  EXPECT_THROW(coordinate_argmin_step(bare, 0), Error);
}

TEST(ProxLinearExtrapolatedStep, EvaluatesAtShiftedPoint) {
  ToyProblem p{{2.0}, {3.0}, {}, 0.0};
  // hat = 2 + 0.5*(2-1) = 2.5; step 1 lands exactly on c
  prox_linear_extrapolated_step(p, 0, 1.0, 0.5, {1.0});
  EXPECT_DOUBLE_EQ(p.x[0], 3.0);
  BareProblem bare;
  EXPECT_THROW(prox_linear_extrapolated_step(bare, 0, 1.0, 0.5, {0.0}), Error);
}

TEST(MinibatchGradient, AveragesSamples) {
  ToyProblem p{{0.0}, {0.0}, {1.0, 3.0, 5.0}, 0.0};
  const DenseVector g = minibatch_gradient(p, {2.0}, {0, 1});
  EXPECT_DOUBLE_EQ(g[0], 0.0);  // (2-1 + 2-3)/2
  const DenseVector g2 = minibatch_gradient(p, {0.0}, {2});
  EXPECT_DOUBLE_EQ(g2[0], -5.0);
  EXPECT_THROW(minibatch_gradient(p, {0.0}, {}), Error);
  EXPECT_THROW(minibatch_gradient(p, {0.0}, {7}), Error);
}

TEST(SgdDecayedStep, HarmonicInEpochs) {
  EXPECT_DOUBLE_EQ(sgd_decayed_step(1.0, 0, 10), 1.0);
  EXPECT_DOUBLE_EQ(sgd_decayed_step(1.0, 10, 10), 0.5);
  EXPECT_DOUBLE_EQ(sgd_decayed_step(1.0, 30, 10), 0.25);
  EXPECT_THROW(sgd_decayed_step(0.0, 1, 10), Error);
  EXPECT_THROW(sgd_decayed_step(1.0, 1, 0), Error);
}

TEST(GradientTable, SlotAverageBookkeeping) {
  GradientTable t(2, 1);
  EXPECT_EQ(t.count(), 2u);
  EXPECT_EQ(t.dim(), 1u);
  EXPECT_DOUBLE_EQ(t.average()[0], 0.0);
  t.set_slot(0, {1.0});
  t.set_slot(1, {3.0});
  EXPECT_DOUBLE_EQ(t.average()[0], 2.0);
  EXPECT_DOUBLE_EQ(t.slot(0)[0], 1.0);
  EXPECT_THROW(t.slot(5), Error);
  EXPECT_THROW(t.set_slot(0, {1.0, 2.0}), Error);
  EXPECT_THROW(GradientTable(0, 1), Error);
  EXPECT_THROW(GradientTable(1, 0), Error);
}

TEST(GradientTable, FrozenEstimates) {
  GradientTable t(2, 1);
  t.set_slot(0, {1.0});
  t.set_slot(1, {3.0});
  {
    GradientTable sag = t;
    const DenseVector est = sag.sag_estimate(0, {5.0});
    EXPECT_DOUBLE_EQ(est[0], 4.0);  // (5-1)/2 + 2
    EXPECT_DOUBLE_EQ(sag.slot(0)[0], 5.0);
    EXPECT_DOUBLE_EQ(sag.average()[0], 4.0);
  }
  {
    GradientTable saga = t;
    const DenseVector est = saga.saga_estimate(0, {5.0});
    EXPECT_DOUBLE_EQ(est[0], 6.0);  // 5 - 1 + 2
    EXPECT_DOUBLE_EQ(saga.slot(0)[0], 5.0);
  }
  {
    GradientTable svrg = t;
    EXPECT_FALSE(svrg.has_anchor());
    EXPECT_THROW(svrg.svrg_estimate(0, {5.0}, {1.0}), Error);
    EXPECT_THROW(svrg.anchor_point(), Error);
    svrg.set_anchor({0.5}, {{1.0}, {3.0}});
    EXPECT_TRUE(svrg.has_anchor());
    EXPECT_DOUBLE_EQ(svrg.anchor_point()[0], 0.5);
    const DenseVector est = svrg.svrg_estimate(0, {5.0}, {1.0});
    EXPECT_DOUBLE_EQ(est[0], 6.0);  // 5 - 1 + 2
    // estimate must not disturb the slots
    EXPECT_DOUBLE_EQ(svrg.slot(0)[0], 1.0);
    EXPECT_THROW(svrg.set_anchor({0.0}, {{1.0}}), Error);
  }
}

// Averaging the saga estimate over a uniformly drawn slot recovers the full
// gradient exactly, whatever the stale table contents.
TEST(GradientTable, SagaIsUnbiased) {
  Rng rng(4);
  const std::size_t m = 6;
  GradientTable base(m, 2);
  std::vector<DenseVector> fresh(m, DenseVector(2));
  for (std::size_t j = 0; j < m; ++j) {
    base.set_slot(j, {rng.normal(), rng.normal()});
    fresh[j] = {rng.normal(), rng.normal()};
  }
  DenseVector full(2, 0.0), mean_est(2, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    axpy(1.0 / m, fresh[j], full);
    GradientTable t = base;
    axpy(1.0 / m, t.saga_estimate(j, fresh[j]), mean_est);
  }
  EXPECT_NEAR(mean_est[0], full[0], 1e-12);
  EXPECT_NEAR(mean_est[1], full[1], 1e-12);
}

TEST(GradientTable, SvrgIsUnbiased) {
  Rng rng(8);
  const std::size_t m = 5;
  GradientTable t(m, 1);
  std::vector<DenseVector> anchor_grads(m, DenseVector(1));
  DenseVector at_x(m);
  for (std::size_t j = 0; j < m; ++j) {
    anchor_grads[j] = {rng.normal()};
    at_x[j] = rng.normal();
  }
  t.set_anchor({0.0}, anchor_grads);
  double full = 0.0, mean_est = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    full += at_x[j] / m;
    mean_est += t.svrg_estimate(j, {at_x[j]}, anchor_grads[j])[0] / m;
  }
  EXPECT_NEAR(mean_est, full, 1e-12);
}

}  // namespace
}  // namespace cdopt
