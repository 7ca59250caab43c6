#include <cmath>

#include <gtest/gtest.h>

#include "cdopt/problems/nmf.hpp"
#include "cdopt/rng.hpp"

namespace cdopt {
namespace {

DenseMatrix scalar_matrix(double v) {
  DenseMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

NmfProblem tiny(double data) {
  return NmfProblem(scalar_matrix(data), scalar_matrix(1.0), scalar_matrix(1.0));
}

DenseMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng, bool positive = false) {
  DenseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = positive ? rng.uniform01() + 0.1 : rng.normal();
  return m;
}

DenseMatrix product(const DenseMatrix& x, const DenseMatrix& y) {
  DenseMatrix out(x.rows(), y.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < y.rows(); ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < x.cols(); ++l) s += x(i, l) * y(j, l);
      out(i, j) = s;
    }
  }
  return out;
}

TEST(Nmf, ScalarFixedPointInOneStep) {
  NmfProblem p = tiny(2.0);
  EXPECT_DOUBLE_EQ(p.objective(), 0.5);
  EXPECT_DOUBLE_EQ(p.relative_error(), 0.5);
  p.column_step(0);  // grad = 1 - 2 = -1, eta = 1: x <- max(0, 1 + 1)
  EXPECT_DOUBLE_EQ(p.left()(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(p.objective(), 0.0);
  p.column_step(1);
  EXPECT_DOUBLE_EQ(p.right()(0, 0), 1.0);  // zero gradient: stays put
  EXPECT_DOUBLE_EQ(p.projected_gradient_norm(), 0.0);
  EXPECT_EQ(p.safeguard_events(), 0u);
}

TEST(Nmf, NegativeDataClipsAtZero) {
  NmfProblem p = tiny(-5.0);
  p.column_step(0);  // grad = 1 + 5 = 6: x <- max(0, 1 - 6)
  EXPECT_DOUBLE_EQ(p.left()(0, 0), 0.0);
  // the opposite column is now empty, so the step gets safeguarded
  p.column_step(1);
  EXPECT_GE(p.safeguard_events(), 1u);
  EXPECT_DOUBLE_EQ(p.right()(0, 0), 1.0);  // gradient vanished with the factor
}

TEST(Nmf, GreedyScoresOnTheScalarCase) {
  NmfProblem p = tiny(2.0);
  const DenseVector gss = p.gs_scores(GreedyRule::kGsS);
  EXPECT_DOUBLE_EQ(gss[0], 1.0);
  EXPECT_DOUBLE_EQ(gss[1], 1.0);
  const DenseVector gsr = p.gs_scores(GreedyRule::kGsR);
  EXPECT_DOUBLE_EQ(gsr[0], 1.0);
  const DenseVector gsq = p.gs_scores(GreedyRule::kGsQ);
  EXPECT_DOUBLE_EQ(gsq[0], -0.5);  // gd + dd/(2 eta) = -1 + 1/2
  EXPECT_EQ(NmfProblem::greedy_sense(GreedyRule::kGsQ), SelectionSense::kMin);
  EXPECT_EQ(NmfProblem::greedy_sense(GreedyRule::kGsR), SelectionSense::kMax);
  EXPECT_THROW(p.gs_scores(GreedyRule::kGs), Error);

  // non-unit step: M = [4], X = [1], Y = [2] gives eta = 1/4 on the left
  // block, grad = -4, displacement 1, model change -4 + 1/(2 eta) = -2
  NmfProblem q(scalar_matrix(4.0), scalar_matrix(1.0), scalar_matrix(2.0));
  const DenseVector gsq2 = q.gs_scores(GreedyRule::kGsQ);
  EXPECT_DOUBLE_EQ(gsq2[0], -2.0);
}

TEST(Nmf, NormalizeKeepsTheProductAndUnitColumns) {
  Rng rng(31);
  DenseMatrix x = random_matrix(5, 2, rng, true);
  DenseMatrix y = random_matrix(4, 2, rng, true);
  const DenseMatrix before = product(x, y);
  NmfProblem p(product(x, y), x, y);
  const double obj = p.objective();
  p.normalize();
  const DenseMatrix after = product(p.left(), p.right());
  for (std::size_t i = 0; i < before.rows(); ++i) {
    for (std::size_t j = 0; j < before.cols(); ++j) {
      EXPECT_NEAR(after(i, j), before(i, j), 1e-12);
    }
  }
  for (std::size_t l = 0; l < 2; ++l) {
    double nsq = 0.0;
    for (std::size_t i = 0; i < 5; ++i) nsq += p.left()(i, l) * p.left()(i, l);
    EXPECT_NEAR(nsq, 1.0, 1e-12);
  }
  EXPECT_NEAR(p.objective(), obj, 1e-12);
  EXPECT_EQ(p.zero_column_events(), 0u);
}

TEST(Nmf, NormalizeSkipsAndCountsZeroColumns) {
  DenseMatrix x(2, 1);  // all-zero column
  DenseMatrix y(3, 1);
  y(0, 0) = 1.0;
  NmfProblem p(DenseMatrix(2, 3), x, y);
  p.normalize();
  EXPECT_EQ(p.zero_column_events(), 1u);
  EXPECT_DOUBLE_EQ(p.right()(0, 0), 1.0);  // untouched
}

TEST(Nmf, ExactStepsDescendMonotonically) {
  Rng rng(13);
  const DenseMatrix planted_x = random_matrix(6, 2, rng, true);
  const DenseMatrix planted_y = random_matrix(5, 2, rng, true);
  NmfProblem p(product(planted_x, planted_y), random_matrix(6, 2, rng, true),
               random_matrix(5, 2, rng, true));
  double prev = p.objective();
  for (int sweep = 0; sweep < 500; ++sweep) {
    for (std::size_t t = 0; t < p.block_count(); ++t) {
      p.column_step(t);
      const double cur = p.objective();
      EXPECT_LE(cur, prev + 1e-12);
      prev = cur;
    }
    p.normalize();
    prev = p.objective();
  }
  EXPECT_LT(p.projected_gradient_norm(), 1e-6);
}

TEST(Nmf, ObserversAreFreeAndStepsTally) {
  NmfProblem p = tiny(2.0);
  p.objective();
  p.relative_error();
  p.projected_gradient_norm();
  EXPECT_EQ(p.counter().total(), 0u);
  p.column_step(0);  // gram 1 + matvec 1 + combine 3 + update 2 + prox 1
  EXPECT_EQ(p.counter().total(), 8u);
  p.normalize();
  EXPECT_EQ(p.counter().total(), 12u);
}

TEST(Nmf, RejectsBadShapes) {
  EXPECT_THROW(NmfProblem(DenseMatrix(2, 2), DenseMatrix(2, 1), DenseMatrix(2, 2)), Error);
  EXPECT_THROW(NmfProblem(DenseMatrix(2, 2), DenseMatrix(2, 0), DenseMatrix(2, 0)), Error);
  EXPECT_THROW(NmfProblem(DenseMatrix(2, 2), DenseMatrix(2, 3), DenseMatrix(2, 3)), Error);
  EXPECT_THROW(NmfProblem(DenseMatrix(2, 2), DenseMatrix(3, 1), DenseMatrix(2, 1)), Error);
  NmfProblem p = tiny(1.0);
  EXPECT_THROW(p.column_step(2), Error);
}

}  // namespace
}  // namespace cdopt
