#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "cdopt/errors.hpp"

namespace cdopt {

// Small counter-style generator (splitmix64 core) with hand-rolled
// distributions. std::mt19937 plus the standard distributions would differ
// across standard libraries; everything here is pinned so trajectories are
// bit-reproducible on any toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Per-trial streams: trial t runs on derive(base_seed, t).
  static std::uint64_t derive(std::uint64_t base_seed, std::uint64_t trial_index) {
    return base_seed ^ trial_index;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe to feed to log().
  double uniform_open01() { return 1.0 - uniform01(); }

  // Standard normal via Box-Muller; the spare deviate is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = uniform_open01();
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 2.0 * 3.14159265358979323846 * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Unbiased integer in [0, n) by rejection.
  std::size_t uniform_below(std::size_t n) {
    if (n == 0) fail("empty-domain", "uniform draw from an empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t bucket = limit / n;
    const std::uint64_t cutoff = bucket * n;  // accept draws below this
    std::uint64_t r = next_u64();
    while (r >= cutoff) r = next_u64();
    return static_cast<std::size_t>(r / bucket);
  }

  // Fisher-Yates.
  void shuffle(std::vector<std::size_t>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = uniform_below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cdopt
