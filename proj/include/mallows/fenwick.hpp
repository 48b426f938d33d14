#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mallows {

/// Binary indexed tree over counts at positions 1..n.
///
/// Supports point update, prefix sums and select-kth (the smallest position
/// whose prefix sum reaches k) in O(log n). Select is what makes Lehmer-code
/// decoding O(n log n).
class FenwickTree {
 public:
  FenwickTree() = default;
  explicit FenwickTree(std::size_t n) : tree_(n + 1, 0) {}

  // Every position starts with count 1; built in O(n).
  static FenwickTree all_ones(std::size_t n) {
    FenwickTree t(n);
    for (std::size_t i = 1; i <= n; ++i) {
      t.tree_[i] += 1;
      std::size_t parent = i + (i & (~i + 1));
      if (parent <= n) t.tree_[parent] += t.tree_[i];
    }
    return t;
  }

  std::size_t size() const { return tree_.empty() ? 0 : tree_.size() - 1; }

  void add(std::size_t pos, std::int64_t delta) {
    for (; pos < tree_.size(); pos += pos & (~pos + 1)) tree_[pos] += delta;
  }

  // Sum of counts at positions 1..pos.
  std::int64_t prefix(std::size_t pos) const {
    std::int64_t s = 0;
    for (; pos > 0; pos -= pos & (~pos + 1)) s += tree_[pos];
    return s;
  }

  // Smallest pos with prefix(pos) >= k. Requires 1 <= k <= prefix(size()).
  std::size_t select(std::int64_t k) const {
    const std::size_t n = size();
    std::size_t pos = 0;
    for (std::size_t step = n == 0 ? 0 : std::bit_floor(n); step > 0; step >>= 1) {
      std::size_t next = pos + step;
      if (next <= n && tree_[next] < k) {
        pos = next;
        k -= tree_[next];
      }
    }
    return pos + 1;
  }

 private:
  std::vector<std::int64_t> tree_;
};

}  // namespace mallows
