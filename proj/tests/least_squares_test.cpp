#include <cmath>

#include <gtest/gtest.h>

#include "cdopt/index_rules.hpp"
#include "cdopt/problems/least_squares.hpp"
#include "cdopt/rng.hpp"

namespace cdopt {
namespace {

// A = [[1,0],[0,2],[0,0]], b = (1,4,1): Gram = diag(1,4), A^T b = (1,8),
// minimizer (1,2) with residual objective 1/2.
LeastSquaresProblem diagonal_problem() {
  DenseMatrix a(3, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  DenseVector b{1.0, 4.0, 1.0};
  return LeastSquaresProblem(a, b, make_block_partition(2, 2));
}

TEST(LeastSquares, ObjectiveGradientAndLipschitz) {
  LeastSquaresProblem p = diagonal_problem();
  EXPECT_DOUBLE_EQ(p.objective(), 9.0);
  EXPECT_NEAR(p.global_lipschitz(), 4.0, 1e-9);
  EXPECT_NEAR(p.gradient_map_norm(), std::sqrt(65.0) / 4.0, 1e-9);
  EXPECT_NEAR(p.block_lipschitz(0), 1.0, 1e-9);
  EXPECT_NEAR(p.block_lipschitz(1), 4.0, 1e-9);
  const DenseVector g1 = p.block_gradient(1);
  EXPECT_DOUBLE_EQ(g1[0], -8.0);
}

TEST(LeastSquares, CoordinateStepsWithReciprocalStepsSolveDiagonalCase) {
  LeastSquaresProblem p = diagonal_problem();
  p.coordinate_step(0, 1.0);
  p.coordinate_step(1, 0.25);
  EXPECT_NEAR(p.point()[0], 1.0, 1e-14);
  EXPECT_NEAR(p.point()[1], 2.0, 1e-14);
  EXPECT_NEAR(p.objective(), 0.5, 1e-14);
  EXPECT_NEAR(p.gradient_map_norm(), 0.0, 1e-14);
  EXPECT_THROW(p.coordinate_step(0, 0.0), Error);
  EXPECT_THROW(p.coordinate_step(5, 0.1), Error);
}

TEST(LeastSquares, SelectionScores) {
  LeastSquaresProblem p = diagonal_problem();
  const DenseVector gs = p.gs_block_scores();
  EXPECT_DOUBLE_EQ(gs[0], 1.0);
  EXPECT_DOUBLE_EQ(gs[1], 8.0);
  EXPECT_EQ(greedy_argmax(gs), 1u);
  const DenseVector gsl = gsl_scores(gs, p.block_lipschitz_all());
  EXPECT_NEAR(gsl[0], 1.0, 1e-9);
  EXPECT_NEAR(gsl[1], 4.0, 1e-9);
}

TEST(LeastSquares, ShiftedBlockGradient) {
  LeastSquaresProblem p = diagonal_problem();
  const DenseVector g = p.block_gradient_shifted(1, {1.0});
  EXPECT_DOUBLE_EQ(g[0], -4.0);  // -8 + 4 * 1
}

TEST(LeastSquares, ObserversAreFree) {
  LeastSquaresProblem p = diagonal_problem();
  p.objective();
  p.gradient_map_norm();
  p.cache_drift();
  EXPECT_EQ(p.counter().total(), 0u);
  p.coordinate_step(0, 1.0);
  // 3 flops for the scalar update, 2n per touched column for the cache
  EXPECT_EQ(p.counter().total(), 7u);
}

TEST(LeastSquares, FullStepInvalidatesThenLazilyRefreshes) {
  LeastSquaresProblem p = diagonal_problem();
  p.full_gradient_step(0.1);
  const std::size_t after_full = p.counter().total();
  EXPECT_EQ(after_full, 12u);  // n(2n-1) + 3n
  EXPECT_DOUBLE_EQ(p.cache_drift(), 0.0);  // cache marked stale, not trusted
  p.block_gradient(0);  // forces the tallied refresh
  EXPECT_EQ(p.counter().total(), after_full + 6u + 1u);
  EXPECT_LT(p.cache_drift(), 1e-12);
}

TEST(LeastSquares, CacheStaysConsistentUnderMixedUpdates) {
  Rng rng(12);
  DenseMatrix a(8, 6);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = rng.normal();
  DenseVector b(8);
  for (auto& v : b) v = rng.normal();
  LeastSquaresProblem p(a, b, make_block_partition(6, 3));
  for (int t = 0; t < 50; ++t) {
    const std::size_t blk = rng.uniform_below(3);
    if (t % 7 == 3) {
      p.full_gradient_step(0.5 / p.global_lipschitz());
    } else if (t % 5 == 2) {
      DenseVector v = p.block_value(blk);
      for (auto& w : v) w += 0.1 * rng.normal();
      p.set_block(blk, v);
    } else {
      p.coordinate_step(blk, 1.0 / p.block_lipschitz(blk));
    }
    EXPECT_LT(p.cache_drift(), 1e-9);
  }
}

TEST(LeastSquares, CyclicConvergesOnRandomInstance) {
  Rng rng(3);
  DenseMatrix a(9, 4);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = rng.normal();
  DenseVector b(9);
  for (auto& v : b) v = rng.normal();
  LeastSquaresProblem p(a, b, make_block_partition(4, 2));
  for (int sweep = 0; sweep < 400; ++sweep) {
    for (std::size_t blk = 0; blk < 2; ++blk) {
      p.coordinate_step(blk, 1.0 / p.block_lipschitz(blk));
    }
  }
  EXPECT_LT(p.gradient_map_norm(), 1e-10);
}

TEST(LeastSquares, RejectsMismatchedShapes) {
  DenseMatrix a(3, 2);
  EXPECT_THROW(LeastSquaresProblem(a, DenseVector{1.0}, make_block_partition(2, 2)), Error);
  EXPECT_THROW(LeastSquaresProblem(a, DenseVector{1.0, 2.0, 3.0}, make_block_partition(5, 2)),
               Error);
  LeastSquaresProblem p = diagonal_problem();
  EXPECT_THROW(p.set_block(0, {1.0, 2.0}), Error);
}

}  // namespace
}  // namespace cdopt
