#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cdopt/index_rules.hpp"
#include "cdopt/problems/quadratic.hpp"
#include "cdopt/problems/rotated_l1.hpp"
#include "cdopt/schemes.hpp"

namespace cdopt {
namespace {

DenseMatrix demo_h() {
  DenseMatrix h(2, 2);
  h(0, 0) = 14.0;
  h(0, 1) = 6.0;
  h(1, 0) = 6.0;
  h(1, 1) = 16.0;
  return h;
}

TEST(Quadratic, ObjectiveAndGradient) {
  QuadraticProblem p(demo_h(), {8.0, -6.0});
  EXPECT_DOUBLE_EQ(p.objective(), 448.0);
  const DenseVector g = p.gradient();
  EXPECT_DOUBLE_EQ(g[0], 76.0);
  EXPECT_DOUBLE_EQ(g[1], -48.0);
  EXPECT_DOUBLE_EQ(p.block_gradient(0)[0], 76.0);
  EXPECT_DOUBLE_EQ(p.block_lipschitz(1), 16.0);
  const DenseVector gs = p.block_gradient_shifted(0, {9.0});
  EXPECT_DOUBLE_EQ(gs[0], 90.0);
}

TEST(Quadratic, ExactCoordinateSweep) {
  QuadraticProblem p(demo_h(), {8.0, -6.0});
  coordinate_argmin_step(p, 0);
  EXPECT_NEAR(p.point()[0], 18.0 / 7.0, 1e-12);
  coordinate_argmin_step(p, 1);
  EXPECT_NEAR(p.point()[1], -27.0 / 28.0, 1e-12);
  // each exact step can only lower a convex objective
  EXPECT_LT(p.objective(), 448.0);
}

TEST(Quadratic, ProximalPointStep) {
  QuadraticProblem p(demo_h(), {8.0, -6.0});
  // argmin of the coordinate model plus 14/2 (v - 8)^2
  EXPECT_NEAR(p.exact_block_min(0, 14.0)[0], 148.0 / 28.0, 1e-12);
  EXPECT_THROW(p.exact_block_min(0, -1.0), Error);
}

TEST(Quadratic, SelectionScores) {
  QuadraticProblem p(demo_h(), {8.0, -6.0});
  const DenseVector gs = p.gs_scores();
  EXPECT_DOUBLE_EQ(gs[0], 76.0);
  EXPECT_DOUBLE_EQ(gs[1], 48.0);
  EXPECT_EQ(greedy_argmax(gs), 0u);
  const DenseVector mbi = p.mbi_scores();
  EXPECT_NEAR(mbi[0], -1444.0 / 7.0, 1e-10);
  EXPECT_NEAR(mbi[1], -72.0, 1e-10);
  EXPECT_EQ(greedy_argmax(mbi, SelectionSense::kMin), 0u);
}

TEST(Quadratic, CyclicSweepsConverge) {
  QuadraticProblem p(demo_h(), {8.0, -6.0});
  for (int sweep = 0; sweep < 60; ++sweep) {
    coordinate_argmin_step(p, 0);
    coordinate_argmin_step(p, 1);
  }
  EXPECT_LT(p.gradient_norm(), 1e-10);
  EXPECT_LT(std::abs(p.point()[0]), 1e-10);
}

TEST(Quadratic, RejectsBadMatrices) {
  DenseMatrix rect(2, 3);
  EXPECT_THROW(QuadraticProblem(rect, {0.0, 0.0}), Error);
  DenseMatrix asym(2, 2);
  asym(0, 1) = 1.0;
  asym(1, 1) = 1.0;
  asym(0, 0) = 1.0;
  EXPECT_THROW(QuadraticProblem(asym, {0.0, 0.0}), Error);
  DenseMatrix zero_diag(2, 2);
  zero_diag(0, 1) = zero_diag(1, 0) = 0.5;
  zero_diag(1, 1) = 1.0;
  EXPECT_THROW(QuadraticProblem(zero_diag, {0.0, 0.0}), Error);
  QuadraticProblem p(demo_h(), {1.0, 1.0});
  EXPECT_THROW(p.block_value(2), Error);
}

TEST(RotatedL1, AxisAlignedSolvesInOneSweep) {
  RotatedL1Problem p(0.0, 3.0, -2.0);
  p.update_coordinate(0);
  p.update_coordinate(1);
  EXPECT_DOUBLE_EQ(p.point()[0], 0.0);
  EXPECT_DOUBLE_EQ(p.point()[1], 0.0);
  EXPECT_DOUBLE_EQ(p.objective(), 0.0);
}

// The classical stall: at a 45-degree rotation, both coordinate restrictions
// are already minimized at (1, 1) even though the true optimum is the origin.
TEST(RotatedL1, QuarterTurnStalls) {
  const double eps = std::numbers::pi / 4.0;
  RotatedL1Problem p(eps, 1.0, 1.0);
  EXPECT_NEAR(p.objective(), std::sqrt(2.0), 1e-12);
  for (int sweep = 0; sweep < 10; ++sweep) {
    p.update_coordinate(0);
    p.update_coordinate(1);
  }
  EXPECT_NEAR(p.point()[0], 1.0, 1e-12);
  EXPECT_NEAR(p.point()[1], 1.0, 1e-12);
  EXPECT_NEAR(p.objective(), std::sqrt(2.0), 1e-12);
  EXPECT_GT(p.objective(), p.objective_at(0.0, 0.0));
}

TEST(RotatedL1, SmallRotationConverges) {
  RotatedL1Problem p(std::numbers::pi / 10.0, 1.0, 1.0);
  for (int sweep = 0; sweep < 40; ++sweep) {
    p.update_coordinate(0);
    p.update_coordinate(1);
  }
  EXPECT_LT(p.objective(), 1e-10);
  EXPECT_NEAR(p.point()[0], 0.0, 1e-10);
  EXPECT_NEAR(p.point()[1], 0.0, 1e-10);
}

TEST(RotatedL1, BlockInterfaceAndErrors) {
  RotatedL1Problem p(0.3, 2.0, -1.0);
  EXPECT_DOUBLE_EQ(p.block_value(1)[0], -1.0);
  EXPECT_DOUBLE_EQ(p.exact_block_min(0, 0.0)[0], p.coordinate_min(0));
  EXPECT_DOUBLE_EQ(rotated_l1_coord_min(0.3, {2.0, -1.0}, 0), p.coordinate_min(0));
  EXPECT_THROW(p.exact_block_min(0, 1.0), Error);
  EXPECT_THROW(p.block_value(2), Error);
  EXPECT_THROW(rotated_l1_coord_min(0.3, {1.0}, 0), Error);
}

}  // namespace
}  // namespace cdopt
