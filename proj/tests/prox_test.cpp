#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "cdopt/prox.hpp"
#include "cdopt/rng.hpp"

namespace cdopt {
namespace {

TEST(Shrink, ClosedForm) {
  EXPECT_DOUBLE_EQ(shrink(3.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(shrink(-3.0, 1.0), -2.0);
  EXPECT_DOUBLE_EQ(shrink(0.5, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(shrink(-0.5, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(shrink(2.0, 0.0), 2.0);
  EXPECT_THROW(shrink(1.0, -0.1), Error);
}

// prox minimizes beta|z| + (z-y)^2/2; verify against a fine scan.
TEST(Shrink, MinimizesItsObjective) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const double y = 8.0 * (rng.uniform01() - 0.5);
    const double beta = 2.0 * rng.uniform01();
    const double z = shrink(y, beta);
    const double fz = beta * std::abs(z) + 0.5 * (z - y) * (z - y);
    for (double d = -5.0; d <= 5.0; d += 0.01) {
      const double fd = beta * std::abs(d) + 0.5 * (d - y) * (d - y);
      EXPECT_GE(fd, fz - 1e-12);
    }
  }
}

TEST(ProjectInterval, ClampsAndRejects) {
  EXPECT_DOUBLE_EQ(project_interval(5.0, -1.0, 2.0), 2.0);
  EXPECT_DOUBLE_EQ(project_interval(-5.0, -1.0, 2.0), -1.0);
  EXPECT_DOUBLE_EQ(project_interval(0.5, -1.0, 2.0), 0.5);
  EXPECT_THROW(project_interval(0.0, 1.0, -1.0), Error);
}

TEST(GroupShrink, ScalesOrZeroes) {
  const DenseVector y{3.0, 4.0};  // norm 5
  const DenseVector out = group_shrink(y, 1.0);
  EXPECT_DOUBLE_EQ(out[0], 3.0 * 0.8);
  EXPECT_DOUBLE_EQ(out[1], 4.0 * 0.8);
  const DenseVector zero = group_shrink(y, 6.0);
  EXPECT_DOUBLE_EQ(zero[0], 0.0);
  EXPECT_DOUBLE_EQ(zero[1], 0.0);
}

TEST(ElasticNet, ShrinkThenDeflate) {
  // prox of alpha|.| + q/2 (.)^2 at y: shrink(y, alpha) / (1 + q)
  EXPECT_DOUBLE_EQ(prox_elastic_net(3.0, 1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(prox_elastic_net(-3.0, 1.0, 0.0), -2.0);
  EXPECT_DOUBLE_EQ(prox_elastic_net(0.5, 1.0, 2.0), 0.0);
}

// Moreau identity for the l1/box conjugate pair:
// prox_{beta|.|}(y) + clamp(y, [-beta, beta]) = y.
TEST(ProxProperties, ResolventIdentity) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const double y = 10.0 * (rng.uniform01() - 0.5);
    const double beta = 3.0 * rng.uniform01();
    const double lhs = shrink(y, beta) + project_interval(y, -beta, beta);
    EXPECT_NEAR(lhs, y, 1e-12);
  }
}

// Proxes are firmly nonexpansive, hence 1-Lipschitz.
TEST(ProxProperties, Nonexpansive) {
  Rng rng(12);
  const SeparableRegularizer regs[] = {
      make_l1_reg(0.7), make_group_l2_reg(1.2), make_box_reg(-0.5, 1.5),
      make_nonneg_reg(), make_elastic_net_reg(0.4, 0.9)};
  for (const auto& r : regs) {
    for (int t = 0; t < 50; ++t) {
      DenseVector a(3), b(3);
      for (int i = 0; i < 3; ++i) {
        a[i] = 6.0 * (rng.uniform01() - 0.5);
        b[i] = 6.0 * (rng.uniform01() - 0.5);
      }
      const DenseVector pa = prox_apply(r, a, 1.0);
      const DenseVector pb = prox_apply(r, b, 1.0);
      EXPECT_LE(norm2(vec_sub(pa, pb)), norm2(vec_sub(a, b)) + 1e-12);
    }
  }
}

TEST(RegularizerValue, IndicatorsAndNorms) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_DOUBLE_EQ(regularizer_value(make_l1_reg(2.0), {1.0, -3.0}), 8.0);
  EXPECT_DOUBLE_EQ(regularizer_value(make_group_l2_reg(2.0), {3.0, 4.0}), 10.0);
  EXPECT_DOUBLE_EQ(regularizer_value(make_box_reg(0.0, 1.0), {0.5, 1.0}), 0.0);
  EXPECT_EQ(regularizer_value(make_box_reg(0.0, 1.0), {1.5}), inf);
  EXPECT_EQ(regularizer_value(make_nonneg_reg(), {-0.1}), inf);
  EXPECT_DOUBLE_EQ(regularizer_value(make_tv1d_reg(1.5), {0.0, 2.0, 1.0}), 4.5);
  EXPECT_DOUBLE_EQ(regularizer_value(make_elastic_net_reg(1.0, 2.0), {2.0}), 6.0);
  EXPECT_DOUBLE_EQ(regularizer_value(make_zero_reg(), {9.0}), 0.0);
}

TEST(ProxApply, ScaleHandling) {
  const DenseVector y{3.0, -0.4};
  // scale multiplies the l1 weight
  const DenseVector l1 = prox_apply(make_l1_reg(0.5), y, 2.0);
  EXPECT_DOUBLE_EQ(l1[0], 2.0);
  EXPECT_DOUBLE_EQ(l1[1], 0.0);
  // projections ignore the scale entirely
  const DenseVector box1 = prox_apply(make_box_reg(-1.0, 1.0), y, 0.3);
  const DenseVector box2 = prox_apply(make_box_reg(-1.0, 1.0), y, 30.0);
  EXPECT_EQ(box1, box2);
  EXPECT_DOUBLE_EQ(box1[0], 1.0);
  EXPECT_THROW(prox_apply(make_l1_reg(1.0), y, 0.0), Error);
  EXPECT_THROW(prox_apply(make_l1_reg(1.0), y, -1.0), Error);
}

// Separability: prox of a componentwise sum acts componentwise.
TEST(ProxApply, Separable) {
  const DenseVector y{2.0, -3.0, 0.2};
  const DenseVector out = prox_apply(make_l1_reg(1.0), y, 1.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    EXPECT_DOUBLE_EQ(out[i], shrink(y[i], 1.0));
  }
}

TEST(Validate, RejectsBadRegularizers) {
  SeparableRegularizer r = make_l1_reg(1.0);
  r.weight = -1.0;
  EXPECT_THROW(validate_regularizer(r), Error);
  EXPECT_THROW(validate_regularizer(make_box_reg(2.0, 1.0)), Error);
}

}  // namespace
}  // namespace cdopt
