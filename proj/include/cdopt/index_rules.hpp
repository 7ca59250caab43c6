#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "cdopt/errors.hpp"
#include "cdopt/linalg.hpp"
#include "cdopt/rng.hpp"

namespace cdopt {

enum class RuleKind {
  kCyclic,
  kShuffledCyclic,
  kRandomUniform,
  kImportance,
  kGreedy,
};

enum class GreedyRule { kGs, kGsl, kMbi, kGsS, kGsR, kGsQ };

enum class SelectionSense { kMax, kMin };

// Mutable state for one index rule. Construct via the helpers below; the
// generic fields keep the struct usable for any of the kinds.
struct IndexRuleState {
  RuleKind kind = RuleKind::kCyclic;
  std::size_t cursor = 0;
  std::vector<std::size_t> permutation;  // shuffled-cyclic order for the current cycle
  DenseVector distribution;              // categorical weights for sampling kinds
  GreedyRule greedy_rule = GreedyRule::kGs;
  Rng rng{0};
};

inline void validate_distribution(const DenseVector& p) {
  if (p.empty()) fail("invalid-distribution", "empty distribution");
  double sum = 0.0;
  for (double w : p) {
    if (w < 0.0) fail("invalid-distribution", "negative weight " + std::to_string(w));
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    fail("invalid-distribution", "weights sum to " + std::to_string(sum));
  }
}

inline IndexRuleState make_cyclic_state() { return {}; }

inline IndexRuleState make_shuffled_state(std::uint64_t seed) {
  IndexRuleState s;
  s.kind = RuleKind::kShuffledCyclic;
  s.rng = Rng(seed);
  return s;
}

inline IndexRuleState make_random_uniform_state(std::size_t blocks, std::uint64_t seed) {
  IndexRuleState s;
  s.kind = RuleKind::kRandomUniform;
  s.distribution.assign(blocks, 1.0 / static_cast<double>(blocks));
  s.rng = Rng(seed);
  return s;
}

inline IndexRuleState make_importance_state(DenseVector distribution, std::uint64_t seed) {
  validate_distribution(distribution);
  IndexRuleState s;
  s.kind = RuleKind::kImportance;
  s.distribution = std::move(distribution);
  s.rng = Rng(seed);
  return s;
}

inline IndexRuleState make_greedy_state(GreedyRule rule) {
  IndexRuleState s;
  s.kind = RuleKind::kGreedy;
  s.greedy_rule = rule;
  return s;
}

// i_k = k mod s.
inline std::size_t next_cyclic(IndexRuleState& state, std::size_t blocks) {
  if (blocks == 0) fail("invalid-partition", "cyclic rule over zero blocks");
  const std::size_t i = state.cursor % blocks;
  state.cursor = (i + 1) % blocks;
  return i;
}

// Cyclic over a uniformly drawn permutation, reshuffled at every cycle end.
inline std::size_t next_shuffled(IndexRuleState& state, std::size_t blocks) {
  if (blocks == 0) fail("invalid-partition", "shuffled rule over zero blocks");
  if (state.permutation.size() != blocks) {
    state.permutation.resize(blocks);
    std::iota(state.permutation.begin(), state.permutation.end(), std::size_t{0});
    state.rng.shuffle(state.permutation);
    state.cursor = 0;
  }
  const std::size_t i = state.permutation[state.cursor++];
  if (state.cursor == blocks) {
    state.cursor = 0;
    state.rng.shuffle(state.permutation);
  }
  return i;
}

// p_alpha(j) = L_j^alpha / sum_i L_i^alpha. alpha = 0 recovers uniform.
inline DenseVector importance_distribution(const DenseVector& lipschitz, double alpha) {
  if (lipschitz.empty()) fail("invalid-lipschitz", "empty Lipschitz vector");
  DenseVector p(lipschitz.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < lipschitz.size(); ++j) {
    if (lipschitz[j] <= 0.0) {
      fail("invalid-lipschitz", "nonpositive block constant at index " + std::to_string(j));
    }
    p[j] = std::pow(lipschitz[j], alpha);
    sum += p[j];
  }
  for (double& w : p) w /= sum;
  return p;
}

// Categorical draw by inverse-CDF walk over state.distribution.
inline std::size_t sample_index(IndexRuleState& state) {
  validate_distribution(state.distribution);
  const double u = state.rng.uniform01();
  double csum = 0.0;
  for (std::size_t j = 0; j < state.distribution.size(); ++j) {
    csum += state.distribution[j];
    if (u < csum) return j;
  }
  return state.distribution.size() - 1;  // u landed in the rounding gap at 1.0
}

// Arg-best of a score vector; ties go to the lowest index.
inline std::size_t greedy_argmax(const DenseVector& scores,
                                 SelectionSense sense = SelectionSense::kMax) {
  if (scores.empty()) fail("empty-domain", "greedy selection over empty scores");
  std::size_t best = 0;
  for (std::size_t j = 1; j < scores.size(); ++j) {
    const bool better =
        sense == SelectionSense::kMax ? scores[j] > scores[best] : scores[j] < scores[best];
    if (better) best = j;
  }
  return best;
}

// Lipschitz-weighted greedy scores ||grad_j|| / sqrt(L_j).
inline DenseVector gsl_scores(const DenseVector& grad_norms, const DenseVector& lipschitz) {
  require_same_size(grad_norms.size(), lipschitz.size(), "gsl score inputs");
  DenseVector out(grad_norms.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (lipschitz[j] <= 0.0) {
      fail("invalid-lipschitz", "nonpositive block constant at index " + std::to_string(j));
    }
    out[j] = grad_norms[j] / std::sqrt(lipschitz[j]);
  }
  return out;
}

// True iff every length-N window of the visit history covers all of
// {0, ..., blocks-1}. Histories shorter than N pass vacuously.
inline bool essentially_cyclic_check(const std::vector<std::size_t>& history, std::size_t blocks,
                                     std::size_t window) {
  if (window < blocks) {
    fail("trivially-false-configuration",
         "window " + std::to_string(window) + " cannot cover " + std::to_string(blocks) +
             " blocks");
  }
  if (history.size() < window) return true;
  std::vector<std::size_t> count(blocks, 0);
  std::size_t covered = 0;
  for (std::size_t t = 0; t < history.size(); ++t) {
    const std::size_t in = history[t];
    if (in >= blocks) fail("index", "history entry " + std::to_string(in) + " out of range");
    if (count[in]++ == 0) ++covered;
    if (t + 1 >= window) {
      if (covered < blocks) return false;
      const std::size_t out = history[t + 1 - window];
      if (--count[out] == 0) --covered;
    }
  }
  return true;
}

}  // namespace cdopt
