#pragma once
// nc.hpp — non-crossing partitions of {1..k} and the Kreweras dual.

#include <vector>

namespace pgc {

// Blocks sorted internally and ordered by least element.
struct NCPartition {
  std::vector<std::vector<int>> blocks;

  int size() const { return static_cast<int>(blocks.size()); }
  int block_of(int element) const;  // index into blocks, -1 if absent
};

bool is_non_crossing(const NCPartition& pi, int k);

// All non-crossing partitions of {1..k} in a deterministic order;
// count is the k-th Catalan number. Guarded at k <= 12.
std::vector<NCPartition> nc_enumerate(int k);

// Dual partition on the k edges interleaved with the vertices on a circle:
// edges i and j share a block iff no block of pi separates them. Satisfies
// |pi| + |dual| = k+1.
NCPartition kreweras_dual(const NCPartition& pi, int k);

long long catalan_number(int k);

}  // namespace pgc
