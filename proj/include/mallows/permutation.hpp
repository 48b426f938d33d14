#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mallows/errors.hpp"
#include "mallows/fenwick.hpp"

namespace mallows {

/// A bijection of {1..n}, stored in one-line notation.
///
/// All indices and values in the public API are 1-based: `p(i)` is π(i).
class Permutation {
 public:
  using value_type = std::uint32_t;

  // Validates that `one_line` is a bijection of {1..n}, n >= 1.
  explicit Permutation(std::vector<value_type> one_line) : map_(std::move(one_line)) {
    detail::require(!map_.empty(), "permutation must have n >= 1");
    std::vector<bool> seen(map_.size() + 1, false);
    for (value_type v : map_) {
      if (v < 1 || v > map_.size() || seen[v])
        detail::fail("not a permutation of 1..n: value " + std::to_string(v));
      seen[v] = true;
    }
  }

  Permutation(std::initializer_list<value_type> one_line)
      : Permutation(std::vector<value_type>(one_line)) {}

  static Permutation identity(std::size_t n) {
    detail::require(n >= 1, "permutation must have n >= 1");
    std::vector<value_type> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<value_type>(i + 1);
    return Permutation(std::move(v), Unchecked{});
  }

  std::size_t size() const { return map_.size(); }

  // π(i) for 1 <= i <= n; unchecked.
  value_type operator()(std::size_t i) const { return map_[i - 1]; }

  value_type at(std::size_t i) const {
    detail::require(i >= 1 && i <= map_.size(), "index out of range");
    return map_[i - 1];
  }

  std::span<const value_type> values() const { return map_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<value_type> v, Unchecked) : map_(std::move(v)) {}

  friend Permutation from_trusted(std::vector<value_type> v);

  std::vector<value_type> map_;
};

// Skips validation; only for internally generated bijections.
inline Permutation from_trusted(std::vector<Permutation::value_type> v) {
  return Permutation(std::move(v), Permutation::Unchecked{});
}

// A point in [0,1]^2.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Finite set of points with pairwise distinct x and pairwise distinct y.
class PointSet {
 public:
  explicit PointSet(std::vector<Point> points) : points_(std::move(points)) {
    auto distinct = [this](auto coord) {
      std::vector<double> c;
      c.reserve(points_.size());
      for (const auto& p : points_) c.push_back(coord(p));
      std::sort(c.begin(), c.end());
      return std::adjacent_find(c.begin(), c.end()) == c.end();
    };
    if (!distinct([](const Point& p) { return p.x; }) ||
        !distinct([](const Point& p) { return p.y; }))
      throw InvalidArgument("invalid point set: duplicate x or y coordinate");
  }

  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<Point> points_;
};

// ---------------------------------------------------------------------------
// Inversions

namespace detail {

// Inversions of an arbitrary sequence of distinct ranks in 1..n, O(n log n).
inline std::uint64_t count_inversions(std::span<const std::uint32_t> ranks) {
  FenwickTree seen(ranks.size());
  std::uint64_t inv = 0;
  for (std::size_t k = ranks.size(); k-- > 0;) {
    inv += static_cast<std::uint64_t>(seen.prefix(ranks[k] - 1));
    seen.add(ranks[k], 1);
  }
  return inv;
}

// Indices of `points` sorted by x.
inline std::vector<std::size_t> x_order(std::span<const Point> points) {
  std::vector<std::size_t> idx(points.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return points[a].x < points[b].x; });
  return idx;
}

}  // namespace detail

/// l(π) = |{(i,j): i<j, π(i)>π(j)}|, counted with a Fenwick tree.
inline std::uint64_t inversion_number(const Permutation& p) {
  return detail::count_inversions(p.values());
}

/// Φ(V): after sorting by x, π(i) is the rank of y_i among all y values.
inline Permutation induce(const PointSet& v) {
  detail::require(v.size() >= 1, "induce: empty point set");
  auto pts = v.points();
  auto order = detail::x_order(pts);
  std::vector<std::size_t> by_y(pts.size());
  for (std::size_t k = 0; k < by_y.size(); ++k) by_y[k] = k;
  std::sort(by_y.begin(), by_y.end(),
            [&](std::size_t a, std::size_t b) { return pts[a].y < pts[b].y; });
  std::vector<std::uint32_t> y_rank(pts.size());
  for (std::size_t r = 0; r < by_y.size(); ++r) y_rank[by_y[r]] = static_cast<std::uint32_t>(r + 1);
  std::vector<std::uint32_t> out(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[i] = y_rank[order[i]];
  return from_trusted(std::move(out));
}

/// l(V): discordant pairs of a point set. Equals l(Φ(V)).
inline std::uint64_t point_inversions(const PointSet& v) {
  if (v.size() == 0) return 0;
  return inversion_number(induce(v));
}

/// z(π) = {(i/n, π(i)/n)}.
inline PointSet points_of(const Permutation& p) {
  const double n = static_cast<double>(p.size());
  std::vector<Point> pts(p.size());
  for (std::size_t i = 1; i <= p.size(); ++i)
    pts[i - 1] = {static_cast<double>(i) / n, static_cast<double>(p(i)) / n};
  return PointSet(std::move(pts));
}

// ---------------------------------------------------------------------------
// Group operations

/// (τ∘π)(i) = τ(π(i)).
inline Permutation compose(const Permutation& t, const Permutation& p) {
  detail::require(t.size() == p.size(), "compose: size mismatch");
  std::vector<std::uint32_t> out(p.size());
  for (std::size_t i = 1; i <= p.size(); ++i) out[i - 1] = t(p(i));
  return from_trusted(std::move(out));
}

inline Permutation inverse(const Permutation& p) {
  std::vector<std::uint32_t> out(p.size());
  for (std::size_t i = 1; i <= p.size(); ++i) out[p(i) - 1] = static_cast<std::uint32_t>(i);
  return from_trusted(std::move(out));
}

/// π^r(i) = π(n+1-i).
inline Permutation reverse(const Permutation& p) {
  auto v = p.values();
  return from_trusted(std::vector<std::uint32_t>(v.rbegin(), v.rend()));
}

/// π_{[j,k]}: the pattern of π on positions j..k, as a permutation of size k-j+1.
inline Permutation restrict_to(const Permutation& p, std::size_t j, std::size_t k) {
  detail::require(j >= 1 && j < k && k <= p.size(), "restrict: need 1 <= j < k <= n");
  std::vector<std::uint32_t> window(p.values().begin() + static_cast<std::ptrdiff_t>(j - 1),
                                    p.values().begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<std::uint32_t> sorted = window;
  std::sort(sorted.begin(), sorted.end());
  for (auto& w : window)
    w = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), w) - sorted.begin() + 1);
  return from_trusted(std::move(window));
}

/// π^{(i)}: delete column i and row π(i), then relabel.
inline Permutation delete_index(const Permutation& p, std::size_t i) {
  detail::require(p.size() >= 2, "delete_index: need n >= 2");
  detail::require(i >= 1 && i <= p.size(), "delete_index: index out of range");
  const std::uint32_t removed = p(i);
  std::vector<std::uint32_t> out;
  out.reserve(p.size() - 1);
  for (std::size_t t = 1; t <= p.size(); ++t) {
    if (t == i) continue;
    out.push_back(p(t) > removed ? p(t) - 1 : p(t));
  }
  return from_trusted(std::move(out));
}

/// The member of Q(π, i) whose value at i is k: row π(i) is lifted out and
/// reinserted so that it becomes row k.
inline Permutation reinsert(const Permutation& p, std::size_t i, std::uint32_t k) {
  detail::require(i >= 1 && i <= p.size(), "reinsert: index out of range");
  detail::require(k >= 1 && k <= p.size(), "reinsert: value out of range");
  const std::uint32_t j = p(i);
  std::vector<std::uint32_t> out(p.values().begin(), p.values().end());
  for (std::size_t t = 1; t <= p.size(); ++t) {
    std::uint32_t v = p(t);
    if (t == i) {
      v = k;
    } else if (j < k && v > j && v <= k) {
      --v;
    } else if (k < j && v >= k && v < j) {
      ++v;
    }
    out[t - 1] = v;
  }
  return from_trusted(std::move(out));
}

/// Q(π, i): all τ with τ^{(i)} = π^{(i)}, ordered by τ(i) = 1..n.
inline std::vector<Permutation> q_neighbors(const Permutation& p, std::size_t i) {
  detail::require(i >= 1 && i <= p.size(), "q_neighbors: index out of range");
  std::vector<Permutation> out;
  out.reserve(p.size());
  for (std::uint32_t k = 1; k <= p.size(); ++k) out.push_back(reinsert(p, i, k));
  return out;
}

/// l(τ) - l(π) for τ ∈ Q(π, i) with τ(i) = k, by counting the points of π
/// strictly between rows j = π(i) and k on each side of column i.
inline std::int64_t inversion_delta(const Permutation& p, std::size_t i, std::uint32_t k) {
  detail::require(i >= 1 && i <= p.size(), "inversion_delta: index out of range");
  detail::require(k >= 1 && k <= p.size(), "inversion_delta: value out of range");
  const std::uint32_t j = p(i);
  if (j == k) return 0;
  // j < k: band is j+1..k; moving up gains inversions to the right, loses to the left.
  const std::uint32_t lo = j < k ? j + 1 : k;
  const std::uint32_t hi = j < k ? k : j - 1;
  std::int64_t right = 0;
  std::int64_t left = 0;
  for (std::size_t t = 1; t <= p.size(); ++t) {
    if (t == i) continue;
    const std::uint32_t v = p(t);
    if (v < lo || v > hi) continue;
    (t > i ? right : left) += 1;
  }
  return j < k ? right - left : left - right;
}

// ---------------------------------------------------------------------------
// Text form: "4,1,7,3,6,2,5"

inline std::string to_string(const Permutation& p) {
  std::string out;
  out.reserve(p.size() * 4);
  for (std::size_t i = 1; i <= p.size(); ++i) {
    if (i > 1) out.push_back(',');
    out += std::to_string(p(i));
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << '(' << to_string(p) << ')'; }

inline Permutation parse_permutation(std::string_view text) {
  std::vector<std::uint32_t> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      detail::fail("cannot parse permutation: '" + std::string(text) + "'");
    v.push_back(value);
    pos = comma + 1;
  }
  return Permutation(std::move(v));
}

}  // namespace mallows
