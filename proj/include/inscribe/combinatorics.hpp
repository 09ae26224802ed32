#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace inscribe {

using Label = int;
/// Sorted list of distinct labels. Faces, cells and facets are all stored this way.
using LabelSet = std::vector<Label>;

/// Calls `fn(const std::vector<std::size_t>&)` for every k-subset of {0..n-1}
/// in lexicographic order. Stops early when `fn` returns false.
template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Every k-subset of a sorted label set, each one sorted.
inline std::vector<LabelSet> subsets_of(const LabelSet& labels, std::size_t k) {
  std::vector<LabelSet> out;
  for_each_subset(labels.size(), k, [&](const std::vector<std::size_t>& idx) {
    LabelSet s;
    s.reserve(k);
    for (std::size_t i : idx) s.push_back(labels[i]);
    out.push_back(std::move(s));
    return true;
  });
  return out;
}

/// Binomial coefficient saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

inline bool is_subset(const LabelSet& small, const LabelSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline LabelSet sorted(LabelSet s) {
  std::sort(s.begin(), s.end());
  return s;
}

/// Sorts each set and then the list of sets, removing duplicates.
inline void canonicalize(std::vector<LabelSet>& sets) {
  for (auto& s : sets) std::sort(s.begin(), s.end());
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

}  // namespace inscribe
