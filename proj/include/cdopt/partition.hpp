#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cdopt/errors.hpp"

namespace cdopt {

// Contiguous partition of {0, ..., dimension-1} into blocks whose sizes differ
// by at most one; earlier blocks absorb the remainder.
struct BlockPartition {
  std::size_t dimension = 0;
  std::vector<std::size_t> offsets;  // block i spans [offsets[i], offsets[i+1])

  std::size_t block_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::size_t block_begin(std::size_t i) const { return offsets[i]; }
  std::size_t block_end(std::size_t i) const { return offsets[i + 1]; }
  std::size_t block_size(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
};

inline BlockPartition make_block_partition(std::size_t dimension, std::size_t blocks) {
  if (dimension == 0 || blocks == 0 || blocks > dimension) {
    fail("invalid-partition", std::to_string(blocks) + " blocks for dimension " +
                                  std::to_string(dimension));
  }
  BlockPartition p;
  p.dimension = dimension;
  p.offsets.resize(blocks + 1);
  const std::size_t base = dimension / blocks;
  const std::size_t extra = dimension % blocks;
  p.offsets[0] = 0;
  for (std::size_t i = 0; i < blocks; ++i) {
    p.offsets[i + 1] = p.offsets[i] + base + (i < extra ? 1 : 0);
  }
  return p;
}

}  // namespace cdopt
