#include <cmath>

#include <gtest/gtest.h>

#include "cdopt/bench/prox_oracle.hpp"
#include "cdopt/rng.hpp"
#include "cdopt/summative.hpp"

namespace cdopt {
namespace {

SummativePair pair_of(SeparableRegularizer f, SeparableRegularizer g, PairEligibility e) {
  return {f, g, e};
}

TEST(Eligibility, AcceptsTheThreeStructures) {
  EXPECT_TRUE(pair_is_eligible(pair_of(make_l1_reg(1.0), make_group_l2_reg(0.5),
                                       PairEligibility::kHomogeneousPlusL2)));
  EXPECT_TRUE(pair_is_eligible(pair_of(make_nonneg_reg(), make_group_l2_reg(2.0),
                                       PairEligibility::kHomogeneousPlusL2)));
  EXPECT_TRUE(pair_is_eligible(pair_of(make_box_reg(0.0, 0.0), make_group_l2_reg(1.0),
                                       PairEligibility::kHomogeneousPlusL2)));
  for (auto g : {make_l1_reg(0.4), make_group_l2_reg(0.7), make_box_reg(-1.0, 2.0),
                 make_nonneg_reg()}) {
    EXPECT_TRUE(pair_is_eligible(
        pair_of(make_tv1d_reg(0.8), g, PairEligibility::kTvPlusMonotone)));
  }
  EXPECT_TRUE(pair_is_eligible(pair_of(make_l1_reg(1.0), make_elastic_net_reg(0.0, 2.0),
                                       PairEligibility::kScalarAbsPlusSmooth)));
}

TEST(Eligibility, RejectsStructureMismatches) {
  // a general box is not a cone, so it cannot head the homogeneous pair
  EXPECT_FALSE(pair_is_eligible(pair_of(make_box_reg(-1.0, 1.0), make_group_l2_reg(1.0),
                                        PairEligibility::kHomogeneousPlusL2)));
  // second member must be the l2 norm
  EXPECT_FALSE(pair_is_eligible(pair_of(make_l1_reg(1.0), make_l1_reg(1.0),
                                        PairEligibility::kHomogeneousPlusL2)));
  // tv must come first
  EXPECT_FALSE(pair_is_eligible(pair_of(make_l1_reg(1.0), make_tv1d_reg(1.0),
                                        PairEligibility::kTvPlusMonotone)));
  // elastic net with a nonzero |.| part is not smooth at zero
  EXPECT_FALSE(pair_is_eligible(pair_of(make_l1_reg(1.0), make_elastic_net_reg(0.5, 2.0),
                                        PairEligibility::kScalarAbsPlusSmooth)));
  EXPECT_THROW(prox_summative(pair_of(make_box_reg(-1.0, 1.0), make_group_l2_reg(1.0),
                                      PairEligibility::kHomogeneousPlusL2),
                              DenseVector{1.0, 2.0}),
               Error);
}

TEST(PairValue, SumsBothTerms) {
  const auto p =
      pair_of(make_l1_reg(2.0), make_group_l2_reg(1.0), PairEligibility::kHomogeneousPlusL2);
  // 2*(3+4) + 5
  EXPECT_DOUBLE_EQ(pair_value(p, {3.0, 4.0}), 19.0);
}

// l1 + group-l2: shrink componentwise, then block-shrink the survivor.
TEST(ProxSummative, SparseGroupClosedForm) {
  const auto p =
      pair_of(make_l1_reg(1.0), make_group_l2_reg(1.0), PairEligibility::kHomogeneousPlusL2);
  const DenseVector out = prox_summative(p, {4.0, -5.0}, 1.0);
  // shrink -> (3, -4), norm 5 -> scale by 4/5
  EXPECT_NEAR(out[0], 2.4, 1e-12);
  EXPECT_NEAR(out[1], -3.2, 1e-12);
}

TEST(ProxSummative, MatchesGridOracle) {
  struct Case {
    SummativePair pair;
    const char* label;
  };
  const Case cases[] = {
      {pair_of(make_l1_reg(0.8), make_group_l2_reg(0.6), PairEligibility::kHomogeneousPlusL2),
       "l1+group"},
      {pair_of(make_nonneg_reg(), make_group_l2_reg(1.1), PairEligibility::kHomogeneousPlusL2),
       "nonneg+group"},
      {pair_of(make_tv1d_reg(0.7), make_l1_reg(0.5), PairEligibility::kTvPlusMonotone),
       "tv+l1"},
      {pair_of(make_tv1d_reg(0.9), make_box_reg(-1.0, 1.0), PairEligibility::kTvPlusMonotone),
       "tv+box"},
      {pair_of(make_tv1d_reg(0.4), make_nonneg_reg(), PairEligibility::kTvPlusMonotone),
       "tv+nonneg"},
      {pair_of(make_l1_reg(1.2), make_elastic_net_reg(0.0, 1.5),
               PairEligibility::kScalarAbsPlusSmooth),
       "abs+quadratic"},
  };
  Rng rng(17);
  for (const auto& c : cases) {
    for (int t = 0; t < 15; ++t) {
      DenseVector y{6.0 * (rng.uniform01() - 0.5), 6.0 * (rng.uniform01() - 0.5)};
      const double scale = 0.25 + 1.75 * rng.uniform01();
      const DenseVector fast = prox_summative(c.pair, y, scale);
      const DenseVector slow = brute_prox_oracle(
          [&](const DenseVector& z) { return pair_value(c.pair, z); }, y, scale);
      EXPECT_NEAR(fast[0], slow[0], 2e-6) << c.label;
      EXPECT_NEAR(fast[1], slow[1], 2e-6) << c.label;
    }
  }
}

// The composed point must satisfy the prox optimality condition: no nearby
// point can do better on value + proximity.
TEST(ProxSummative, ComposedPointIsStationary) {
  const auto p =
      pair_of(make_tv1d_reg(0.6), make_group_l2_reg(0.8), PairEligibility::kTvPlusMonotone);
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    DenseVector y(6);
    for (auto& v : y) v = 5.0 * (rng.uniform01() - 0.5);
    const DenseVector x = prox_summative(p, y, 1.0);
    const double fx = pair_value(p, x) + 0.5 * norm_sq(vec_sub(x, y));
    for (int q = 0; q < 200; ++q) {
      DenseVector z = x;
      for (auto& v : z) v += 0.02 * (rng.uniform01() - 0.5);
      const double fz = pair_value(p, z) + 0.5 * norm_sq(vec_sub(z, y));
      EXPECT_GE(fz, fx - 1e-12);
    }
  }
}

}  // namespace
}  // namespace cdopt
