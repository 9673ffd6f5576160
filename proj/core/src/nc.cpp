// nc.cpp — non-crossing partitions, enumeration and Kreweras duality.

#include "pgc/nc.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "pgc/errors.hpp"

namespace pgc {

int NCPartition::block_of(int element) const {
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
    for (int x : blocks[b])
      if (x == element) return b;
  return -1;
}

namespace {

void validate_partition(const NCPartition& pi, int k) {
  std::vector<int> seen(k + 1, 0);
  for (const auto& b : pi.blocks) {
    if (b.empty()) fail(ErrorCode::BadParameter, "empty partition block");
    for (int x : b) {
      if (x < 1 || x > k) fail(ErrorCode::BadParameter, "partition element out of range");
      if (seen[x]++) fail(ErrorCode::BadParameter, "partition element repeated");
    }
  }
  for (int x = 1; x <= k; ++x)
    if (!seen[x]) fail(ErrorCode::BadParameter, "partition misses an element");
}

NCPartition canonical(std::vector<std::vector<int>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
  NCPartition pi;
  pi.blocks = std::move(blocks);
  return pi;
}

}  // namespace

bool is_non_crossing(const NCPartition& pi, int k) {
  validate_partition(pi, k);
  // a < b < c < d with a,c together and b,d together in a different block.
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b)
      for (int c = b + 1; c <= k; ++c)
        for (int d = c + 1; d <= k; ++d) {
          int ba = pi.block_of(a);
          if (ba == pi.block_of(c) && pi.block_of(b) == pi.block_of(d) &&
              ba != pi.block_of(b))
            return false;
        }
  return true;
}

std::vector<NCPartition> nc_enumerate(int k) {
  if (k < 0) fail(ErrorCode::BadParameter, "negative partition size");
  if (k > 12) fail(ErrorCode::TooLarge, "non-crossing enumeration capped at k = 12");
  std::vector<NCPartition> out;
  if (k == 0) {
    out.push_back(NCPartition{});
    return out;
  }
  // Restricted growth strings in lexicographic order, filtered.
  std::vector<int> rgs(k, 0);
  while (true) {
    int nblocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<int>> blocks(nblocks);
    for (int i = 0; i < k; ++i) blocks[rgs[i]].push_back(i + 1);
    NCPartition pi = canonical(std::move(blocks));
    if (is_non_crossing(pi, k)) out.push_back(std::move(pi));
    // next restricted growth string
    int i = k - 1;
    for (; i >= 1; --i) {
      int maxpre = 0;
      for (int j = 0; j < i; ++j) maxpre = std::max(maxpre, rgs[j]);
      if (rgs[i] <= maxpre) {
        ++rgs[i];
        for (int j = i + 1; j < k; ++j) rgs[j] = 0;
        break;
      }
    }
    if (i < 1) break;
  }
  return out;
}

NCPartition kreweras_dual(const NCPartition& pi, int k) {
  if (!is_non_crossing(pi, k))
    fail(ErrorCode::NotNonCrossing, "Kreweras dual needs a non-crossing partition");
  if (k == 0) return NCPartition{};
  // Edge i sits between vertices i and i+1 (edge k between k and 1). Edges
  // i < j join iff every block lies inside {i+1..j} or inside its complement;
  // the dual is the union-find closure over all joinable pairs.
  std::vector<int> parent(k + 1);
  for (int i = 1; i <= k; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      bool ok = true;
      for (const auto& b : pi.blocks) {
        bool any_in = false, any_out = false;
        for (int x : b)
          if (x > i && x <= j) any_in = true;
          else any_out = true;
        if (any_in && any_out) {
          ok = false;
          break;
        }
      }
      if (ok) parent[find(i)] = find(j);
    }
  std::map<int, std::vector<int>> groups;
  for (int i = 1; i <= k; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> blocks;
  for (auto& [rep, members] : groups) {
    (void)rep;
    blocks.push_back(std::move(members));
  }
  return canonical(std::move(blocks));
}

long long catalan_number(int k) {
  if (k < 0) fail(ErrorCode::BadParameter, "negative Catalan index");
  if (k > 30) fail(ErrorCode::TooLarge, "Catalan number exceeds 64 bits of headroom");
  long long c = 1;
  for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

}  // namespace pgc
