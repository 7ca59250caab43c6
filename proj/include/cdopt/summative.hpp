#pragma once

#include "cdopt/errors.hpp"
#include "cdopt/prox.hpp"

namespace cdopt {

// The three structures under which prox_{f+g} splits into prox_g o prox_f
// (first member's prox applied first):
//   - f positively homogeneous of degree one, g an l2-norm penalty;
//   - f a 1D total variation, g with a componentwise monotone,
//     order-preserving prox;
//   - scalar |.| plus a smooth even quadratic (the elastic-net split).
enum class PairEligibility {
  kHomogeneousPlusL2,
  kTvPlusMonotone,
  kScalarAbsPlusSmooth,
};

struct SummativePair {
  SeparableRegularizer first;   // prox applied first
  SeparableRegularizer second;  // prox applied to the first prox's output
  PairEligibility eligibility = PairEligibility::kHomogeneousPlusL2;
};

// Structural check that the pair actually satisfies its claimed eligibility.
inline bool pair_is_eligible(const SummativePair& p) {
  const auto& f = p.first;
  const auto& g = p.second;
  switch (p.eligibility) {
    case PairEligibility::kHomogeneousPlusL2: {
      // f's epigraph must be a cone: l1, the nonnegative orthant, or the box
      // degenerated to the origin (any other box is not a cone).
      const bool f_ok = f.kind == RegKind::kL1 || f.kind == RegKind::kNonneg ||
                        (f.kind == RegKind::kBox && f.lo == 0.0 && f.hi == 0.0);
      return f_ok && g.kind == RegKind::kGroupL2;
    }
    case PairEligibility::kTvPlusMonotone: {
      // All four of these proxes preserve the componentwise ordering (shrink,
      // scaling toward zero, clamping, and one-sided clamping), which is what
      // lets them follow the TV prox without disturbing its level sets.
      const bool g_ok = g.kind == RegKind::kL1 || g.kind == RegKind::kGroupL2 ||
                        g.kind == RegKind::kBox || g.kind == RegKind::kNonneg;
      return f.kind == RegKind::kTv1d && g_ok;
    }
    case PairEligibility::kScalarAbsPlusSmooth:
      // g must be differentiable with derivative zero at the origin; among the
      // supported kinds that is exactly the pure quadratic (elastic-net kind
      // with no |.| part).
      return f.kind == RegKind::kL1 && g.kind == RegKind::kElasticNet && g.weight == 0.0;
  }
  return false;
}

inline double pair_value(const SummativePair& p, const DenseVector& x) {
  return regularizer_value(p.first, x) + regularizer_value(p.second, x);
}

// Exact prox of scale * (first + second) for eligible pairs.
inline DenseVector prox_summative(const SummativePair& p, const DenseVector& y,
                                  double scale = 1.0) {
  if (!pair_is_eligible(p)) {
    fail("ineligible-composition", "pair does not satisfy its eligibility structure");
  }
  return prox_apply(p.second, prox_apply(p.first, y, scale), scale);
}

}  // namespace cdopt
