// pairing.cpp — enumeration of admissible pairings of random edges.

#include <algorithm>
#include <cstdlib>
#include <map>

#include "pgc/wick.hpp"

namespace pgc {

namespace {

constexpr std::size_t kPairingCap = 5'000'000;

// All perfect matchings of `items`: first element paired with each other in
// turn, recursing on the rest.
void real_matchings(std::vector<std::string> items,
                    std::vector<std::pair<std::string, std::string>>& acc,
                    std::vector<std::vector<std::pair<std::string, std::string>>>& out) {
  if (items.empty()) {
    out.push_back(acc);
    return;
  }
  std::string first = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) {
    std::vector<std::string> rest;
    for (std::size_t j = 1; j < items.size(); ++j)
      if (j != i) rest.push_back(items[j]);
    acc.push_back({first, items[i]});
    real_matchings(rest, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<Pairing> admissible_pairings(const ProductGraph& g, PairingMode mode) {
  // Grouped by |label|: real matrices equal their conjugates, so +l and -l
  // alias one matrix in real mode; in complex mode the signs split the group.
  std::map<int, std::vector<std::string>> groups;
  std::map<int, std::vector<std::string>> minus;  // complex only
  for (const auto& e : g.edges()) {
    if (!e.input.is_random()) continue;
    if (mode == PairingMode::Real) {
      groups[std::abs(e.input.label)].push_back(e.id);
    } else if (e.input.label > 0) {
      groups[e.input.label].push_back(e.id);
    } else {
      minus[-e.input.label].push_back(e.id);
    }
  }

  // Per-group lists of matchings.
  std::vector<std::vector<std::vector<std::pair<std::string, std::string>>>> per_group;
  if (mode == PairingMode::Real) {
    for (auto& [label, ids] : groups) {
      (void)label;
      if (ids.size() % 2 != 0) return {};
      std::vector<std::vector<std::pair<std::string, std::string>>> ms;
      std::vector<std::pair<std::string, std::string>> acc;
      real_matchings(ids, acc, ms);
      per_group.push_back(std::move(ms));
    }
  } else {
    // Every +label count must equal the -label count; matchings are the
    // bijections from the plus list onto the minus list.
    for (auto& [label, ids] : minus)
      if (!groups.count(label) || groups[label].size() != ids.size()) return {};
    for (auto& [label, plus] : groups) {
      auto it = minus.find(label);
      if (it == minus.end()) return {};
      const auto& neg = it->second;
      std::vector<int> perm(neg.size());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
      std::vector<std::vector<std::pair<std::string, std::string>>> ms;
      do {
        std::vector<std::pair<std::string, std::string>> m;
        for (std::size_t i = 0; i < plus.size(); ++i) m.push_back({plus[i], neg[perm[i]]});
        ms.push_back(std::move(m));
      } while (std::next_permutation(perm.begin(), perm.end()));
      per_group.push_back(std::move(ms));
    }
  }

  std::size_t total = 1;
  for (const auto& ms : per_group) {
    total *= std::max<std::size_t>(ms.size(), 1);
    if (total > kPairingCap) fail(ErrorCode::TooLarge, "too many admissible pairings");
  }

  std::vector<Pairing> result;
  std::vector<std::size_t> pick(per_group.size(), 0);
  while (true) {
    Pairing p;
    p.mode = mode;
    for (std::size_t gidx = 0; gidx < per_group.size(); ++gidx)
      for (const auto& pr : per_group[gidx][pick[gidx]]) p.pairs.push_back(pr);
    for (auto& pr : p.pairs)
      if (pr.second < pr.first) std::swap(pr.first, pr.second);
    std::sort(p.pairs.begin(), p.pairs.end());
    result.push_back(std::move(p));
    int i = static_cast<int>(per_group.size()) - 1;
    for (; i >= 0; --i) {
      if (++pick[i] < per_group[i].size()) break;
      pick[i] = 0;
    }
    if (i < 0) break;
  }
  return result;
}

}  // namespace pgc
