#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mallows/errors.hpp"
#include "mallows/permutation.hpp"
#include "mallows/rect.hpp"

namespace mallows {

/// L_π(r) = (1/n) #{i : (i/n, π(i)/n) ∈ r}.
inline double empirical_rect(const Permutation& p, const Rect& r) {
  const double n = static_cast<double>(p.size());
  std::size_t hits = 0;
  for (std::size_t i = 1; i <= p.size(); ++i)
    if (r.contains(static_cast<double>(i) / n, static_cast<double>(p(i)) / n)) ++hits;
  return static_cast<double>(hits) / n;
}

/// L_{π,τ}(r) = (1/n) #{i : (π(i)/n, τ(i)/n) ∈ r}.
inline double empirical_pair_rect(const Permutation& p, const Permutation& t, const Rect& r) {
  detail::require(p.size() == t.size(), "empirical_pair_rect: size mismatch");
  const double n = static_cast<double>(p.size());
  std::size_t hits = 0;
  for (std::size_t i = 1; i <= p.size(); ++i)
    if (r.contains(static_cast<double>(p(i)) / n, static_cast<double>(t(i)) / n)) ++hits;
  return static_cast<double>(hits) / n;
}

/// (1/n) Σ f(i/n, π(i)/n).
template <class F>
double empirical_mean(const Permutation& p, F&& f) {
  const double n = static_cast<double>(p.size());
  double s = 0.0;
  for (std::size_t i = 1; i <= p.size(); ++i) s += f(static_cast<double>(i) / n, static_cast<double>(p(i)) / n);
  return s / n;
}

/// Point counts on the m x m grid of half-open cells ((a-1)/m, a/m] x ((b-1)/m, b/m].
struct GridCounts {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::uint64_t> counts;  // row-major: counts[(a-1)*m + (b-1)]

  std::uint64_t at(std::size_t a, std::size_t b) const { return counts[(a - 1) * m + (b - 1)]; }

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto c : counts) s += c;
    return s;
  }
};

namespace detail {

// Cell of coordinate k/n in ((c-1)/m, c/m]: c = ceil(k m / n), exact in integers.
inline std::size_t grid_cell(std::uint64_t k, std::uint64_t m, std::uint64_t n) {
  return static_cast<std::size_t>((k * m + n - 1) / n);
}

}  // namespace detail

/// Grid of the points (i/n, π(i)/n).
inline GridCounts grid_counts(const Permutation& p, std::size_t m) {
  detail::require(m >= 1, "grid_counts: m must be >= 1");
  GridCounts g{m, p.size(), std::vector<std::uint64_t>(m * m, 0)};
  for (std::size_t i = 1; i <= p.size(); ++i) {
    const std::size_t a = detail::grid_cell(i, m, p.size());
    const std::size_t b = detail::grid_cell(p(i), m, p.size());
    ++g.counts[(a - 1) * m + (b - 1)];
  }
  return g;
}

/// Grid of the points (π(i)/n, τ(i)/n).
inline GridCounts grid_counts(const Permutation& p, const Permutation& t, std::size_t m) {
  detail::require(m >= 1, "grid_counts: m must be >= 1");
  detail::require(p.size() == t.size(), "grid_counts: size mismatch");
  GridCounts g{m, p.size(), std::vector<std::uint64_t>(m * m, 0)};
  for (std::size_t i = 1; i <= p.size(); ++i) {
    const std::size_t a = detail::grid_cell(p(i), m, p.size());
    const std::size_t b = detail::grid_cell(t(i), m, p.size());
    ++g.counts[(a - 1) * m + (b - 1)];
  }
  return g;
}

/// Reference mass of every grid cell, evaluated once and reused for every
/// rectangle that is a union of cells.
struct CellMasses {
  std::size_t m = 0;
  std::vector<double> mass;  // row-major like GridCounts

  double at(std::size_t a, std::size_t b) const { return mass[(a - 1) * m + (b - 1)]; }
};

inline Rect grid_rect(std::size_t m, std::size_t a1, std::size_t a2, std::size_t b1, std::size_t b2) {
  const double md = static_cast<double>(m);
  return Rect::half_open(static_cast<double>(a1) / md, static_cast<double>(a2) / md,
                         static_cast<double>(b1) / md, static_cast<double>(b2) / md);
}

/// Calls `rect_mass` exactly m*m times, once per cell.
inline CellMasses make_cell_masses(std::size_t m, const std::function<double(const Rect&)>& rect_mass) {
  detail::require(m >= 1, "make_cell_masses: m must be >= 1");
  CellMasses out{m, std::vector<double>(m * m)};
  for (std::size_t a = 1; a <= m; ++a)
    for (std::size_t b = 1; b <= m; ++b) out.mass[(a - 1) * m + (b - 1)] = rect_mass(grid_rect(m, a - 1, a, b - 1, b));
  return out;
}

/// Reference masses equal to the empirical cell frequencies of `g`.
inline CellMasses cell_masses_from(const GridCounts& g) {
  CellMasses out{g.m, std::vector<double>(g.counts.size())};
  for (std::size_t k = 0; k < g.counts.size(); ++k)
    out.mass[k] = static_cast<double>(g.counts[k]) / static_cast<double>(g.n);
  return out;
}

enum class DiscrepancyMode { anchored, all_cells };

struct RectDeviation {
  Rect rect;
  double empirical = 0.0;
  double reference = 0.0;
};

struct DiscrepancyReport {
  double max_abs_dev = 0.0;
  Rect argmax_rect;
  std::optional<std::vector<RectDeviation>> per_rect_devs;
};

/// sup over grid-aligned rectangles of |empirical mass - reference mass|.
///
/// anchored: the m^2 rectangles (0,a/m] x (0,b/m].
/// all_cells: every (a1/m,a2/m] x (b1/m,b2/m], O(m^4) via 2-D prefix sums.
inline DiscrepancyReport grid_discrepancy(const GridCounts& g, const CellMasses& ref, DiscrepancyMode mode,
                                          bool keep_table = false) {
  detail::require(g.m == ref.m, "grid_discrepancy: grid sizes differ");
  detail::require(g.n >= 1, "grid_discrepancy: empty grid");
  const std::size_t m = g.m;
  const std::size_t w = m + 1;
  // P[a][b] = sum over cells (<= a, <= b)
  std::vector<std::int64_t> pc(w * w, 0);
  std::vector<double> pr(w * w, 0.0);
  for (std::size_t a = 1; a <= m; ++a)
    for (std::size_t b = 1; b <= m; ++b) {
      pc[a * w + b] = static_cast<std::int64_t>(g.at(a, b)) + pc[(a - 1) * w + b] + pc[a * w + b - 1] -
                      pc[(a - 1) * w + b - 1];
      pr[a * w + b] = ref.at(a, b) + pr[(a - 1) * w + b] + pr[a * w + b - 1] - pr[(a - 1) * w + b - 1];
    }
  const double n = static_cast<double>(g.n);
  DiscrepancyReport rep;
  rep.max_abs_dev = -1.0;
  if (keep_table) rep.per_rect_devs.emplace();
  auto visit = [&](std::size_t a1, std::size_t a2, std::size_t b1, std::size_t b2) {
    const std::int64_t c = pc[a2 * w + b2] - pc[a1 * w + b2] - pc[a2 * w + b1] + pc[a1 * w + b1];
    const double r = pr[a2 * w + b2] - pr[a1 * w + b2] - pr[a2 * w + b1] + pr[a1 * w + b1];
    const double e = static_cast<double>(c) / n;
    const double dev = std::abs(e - r);
    if (dev > rep.max_abs_dev) {
      rep.max_abs_dev = dev;
      rep.argmax_rect = grid_rect(m, a1, a2, b1, b2);
    }
    if (keep_table) rep.per_rect_devs->push_back({grid_rect(m, a1, a2, b1, b2), e, r});
  };
  if (mode == DiscrepancyMode::anchored) {
    for (std::size_t a = 1; a <= m; ++a)
      for (std::size_t b = 1; b <= m; ++b) visit(0, a, 0, b);
  } else {
    for (std::size_t a1 = 0; a1 < m; ++a1)
      for (std::size_t a2 = a1 + 1; a2 <= m; ++a2)
        for (std::size_t b1 = 0; b1 < m; ++b1)
          for (std::size_t b2 = b1 + 1; b2 <= m; ++b2) visit(a1, a2, b1, b2);
  }
  return rep;
}

inline DiscrepancyReport grid_discrepancy(const GridCounts& g, const std::function<double(const Rect&)>& rect_mass,
                                          DiscrepancyMode mode, bool keep_table = false) {
  return grid_discrepancy(g, make_cell_masses(g.m, rect_mass), mode, keep_table);
}

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of
/// `samples` and `cdf`, using both one-sided limits at every jump.
template <class Cdf>
double ks_statistic(std::span<const double> samples, Cdf&& cdf) {
  detail::require(!samples.empty(), "ks_statistic: empty samples");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double total = static_cast<double>(s.size());
  double d = 0.0;
  std::size_t k = 0;
  while (k < s.size()) {
    std::size_t j = k;
    while (j < s.size() && s[j] == s[k]) ++j;  // ties form one jump
    const double f = cdf(s[k]);
    const double below = static_cast<double>(k) / total;
    const double upto = static_cast<double>(j) / total;
    d = std::max({d, std::abs(below - f), std::abs(upto - f)});
    k = j;
  }
  return d;
}

}  // namespace mallows
