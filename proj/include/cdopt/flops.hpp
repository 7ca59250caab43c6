#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "cdopt/errors.hpp"

namespace cdopt {

enum class FlopCategory : int {
  kMatVec = 0,        // matrix-vector products and column/row combinations
  kVecVec,            // dots, axpys, elementwise passes over vectors
  kScalar,            // stray scalar arithmetic in update formulas
  kTranscendental,    // exp/log evaluations
  kProx,              // proximal-map applications, one tally per component
};

inline constexpr std::size_t kFlopCategoryCount = 5;

// Tallies the floating-point work a solver performs, split by category, so a
// coordinate update can be weighed against its full-vector counterpart.
// Convention used throughout the problems: update maps, their cache
// maintenance, and greedy selection scores tally; diagnostics (objective
// values, convergence metrics) are observers and do not.
class FlopCounter {
 public:
  void add(FlopCategory c, std::uint64_t n) { tally_[static_cast<int>(c)] += n; }

  std::uint64_t category(FlopCategory c) const { return tally_[static_cast<int>(c)]; }

  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (std::uint64_t t : tally_) sum += t;
    return sum;
  }

  void reset() { tally_.fill(0); }

 private:
  std::array<std::uint64_t, kFlopCategoryCount> tally_{};
};

// Ratio of coordinate-update work to full-update work. The coordinate-friendly
// regime is a ratio on the order of 1/s for s blocks.
inline double cf_ratio(const FlopCounter& coordinate, const FlopCounter& full) {
  if (full.total() == 0) {
    fail("undefined-ratio", "full-update flop total is zero");
  }
  return static_cast<double>(coordinate.total()) / static_cast<double>(full.total());
}

}  // namespace cdopt
