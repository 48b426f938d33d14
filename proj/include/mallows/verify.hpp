#pragma once

// Exhaustive finite-n identity checks and density identity checks.
//
// Every check returns a CheckResult; `run_verify` drives the whole battery
// for the CLI. Exact probability comparisons use absolute tolerance 1e-12.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mallows/density.hpp"
#include "mallows/format.hpp"
#include "mallows/oracle.hpp"
#include "mallows/permutation.hpp"
#include "mallows/quadrature.hpp"
#include "mallows/rng.hpp"
#include "mallows/sampler.hpp"

namespace mallows {

enum class CheckStatus { pass, fail, skipped, recorded };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
    case CheckStatus::recorded: return "recorded";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  double metric = 0.0;     // worst error, or violation count
  double tolerance = 0.0;  // bound the metric was held to
  std::string detail;

  bool ok() const { return status != CheckStatus::fail; }
};

inline constexpr double kExactTol = 1e-12;

namespace detail {

inline CheckResult skipped(std::string name, std::string why) {
  return {std::move(name), CheckStatus::skipped, 0.0, 0.0, std::move(why)};
}

inline CheckResult graded(std::string name, double metric, double tol, std::string detail) {
  return {std::move(name), metric <= tol ? CheckStatus::pass : CheckStatus::fail, metric, tol, std::move(detail)};
}

inline std::string q_list_text(const std::vector<double>& qs) {
  std::string s;
  for (double q : qs) s += (s.empty() ? "" : ",") + format_short(q);
  return s;
}

inline std::uint64_t brute_inversions(const Permutation& p) {
  std::uint64_t c = 0;
  for (std::size_t i = 1; i <= p.size(); ++i)
    for (std::size_t j = i + 1; j <= p.size(); ++j)
      if (p(i) > p(j)) ++c;
  return c;
}

// Visits every Lehmer code of size n (odometer order).
template <class Fn>
void for_each_code(std::size_t n, Fn&& fn) {
  LehmerCode code{std::vector<std::uint32_t>(n, 0)};
  for (;;) {
    fn(code);
    std::size_t k = n;
    while (k-- > 0) {
      if (code.c[k] < n - 1 - k) {
        ++code.c[k];
        break;
      }
      code.c[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) return;
  }
}

// P(c = k) for c ~ truncated geometric on {0..m} with ratio q.
inline double truncated_geometric_pmf(double q, std::uint32_t m, std::uint32_t k) {
  double norm = 0.0, power = 1.0;
  for (std::uint32_t j = 0; j <= m; ++j) {
    norm += power;
    power *= q;
  }
  return std::pow(q, static_cast<double>(k)) / norm;
}

// Joint table J[s][w][i][j] = P(π(s) = i, π(w) = j), 0-based, s != w.
struct JointTable {
  std::size_t n;
  std::vector<double> data;
  double at(std::size_t s, std::size_t w, std::size_t i, std::size_t j) const {
    return data[(((s - 1) * n + (w - 1)) * n + (i - 1)) * n + (j - 1)];
  }
};

inline JointTable joint_table(const ExactDistribution& d) {
  const std::size_t n = d.n;
  JointTable t{n, std::vector<double>(n * n * n * n, 0.0)};
  for (std::size_t k = 0; k < d.perms.size(); ++k)
    for (std::size_t s = 1; s <= n; ++s)
      for (std::size_t w = 1; w <= n; ++w)
        if (s != w) t.data[(((s - 1) * n + (w - 1)) * n + (d.perms[k](s) - 1)) * n + (d.perms[k](w) - 1)] += d.probs[k];
  return t;
}

inline bool ratio_within(double num, double den, double q, std::size_t d) {
  const double qd = std::pow(q, static_cast<double>(d));
  const double lo = std::min(qd, 1.0 / qd);
  const double hi = std::max(qd, 1.0 / qd);
  const double r = num / den;
  return r >= lo * (1.0 - kExactTol) && r <= hi * (1.0 + kExactTol);
}

inline double interval_bound(double q, std::size_t d) {
  const double qd = std::pow(q, static_cast<double>(d));
  return std::max(std::abs(1.0 - qd), std::abs(1.0 - 1.0 / qd));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Permutation identities

/// Fenwick count vs O(n^2) scan, and l(π) = l(z(π)), over all of S_n.
inline CheckResult check_inversion_counts(std::size_t max_n) {
  const std::size_t top = std::min<std::size_t>(max_n, 8);
  if (top < 2) return detail::skipped("inversion_counts", "needs n >= 2");
  std::size_t bad = 0;
  for (std::size_t n = 2; n <= top; ++n) {
    const auto d = enumerate_measure(n, 1.0);
    for (const auto& p : d.perms) {
      const auto brute = detail::brute_inversions(p);
      if (inversion_number(p) != brute || point_inversions(points_of(p)) != brute) ++bad;
    }
  }
  return detail::graded("inversion_counts", static_cast<double>(bad), 0.0,
                        "all of S_n for n <= " + std::to_string(top));
}

/// Counting formula for l(τ) - l(π), τ ∈ Q(π,i), vs direct recount.
inline CheckResult check_inversion_delta(std::size_t max_n) {
  const std::size_t top = std::min<std::size_t>(max_n, 7);
  if (top < 2) return detail::skipped("inversion_delta", "needs n >= 2");
  std::size_t bad = 0, cases = 0;
  for (std::size_t n = 2; n <= top; ++n) {
    const auto d = enumerate_measure(n, 1.0);
    for (const auto& p : d.perms) {
      const auto lp = static_cast<std::int64_t>(inversion_number(p));
      for (std::size_t i = 1; i <= n; ++i) {
        const auto nbrs = q_neighbors(p, i);
        for (std::uint32_t k = 1; k <= n; ++k) {
          ++cases;
          const auto& tau = nbrs[k - 1];
          const auto direct = static_cast<std::int64_t>(detail::brute_inversions(tau)) - lp;
          if (inversion_delta(p, i, k) != direct || tau(i) != k || delete_index(tau, i) != delete_index(p, i)) ++bad;
        }
      }
    }
  }
  return detail::graded("inversion_delta", static_cast<double>(bad), 0.0,
                        std::to_string(cases) + " (pi,i,k) cases, n <= " + std::to_string(top));
}

/// Q(π,i) and Q(τ,i) are equal or disjoint, and each has n members.
inline CheckResult check_q_partition(std::size_t max_n) {
  const std::size_t top = std::min<std::size_t>(max_n, 5);
  if (top < 2) return detail::skipped("q_partition", "needs n >= 2");
  std::size_t bad = 0;
  for (std::size_t n = 2; n <= top; ++n) {
    const auto d = enumerate_measure(n, 1.0);
    for (std::size_t i = 1; i <= n; ++i) {
      std::vector<std::vector<std::size_t>> classes(d.perms.size());
      for (std::size_t a = 0; a < d.perms.size(); ++a) {
        for (const auto& t : q_neighbors(d.perms[a], i)) classes[a].push_back(d.index_of(t));
        std::sort(classes[a].begin(), classes[a].end());
        if (classes[a].size() != n || std::adjacent_find(classes[a].begin(), classes[a].end()) != classes[a].end()) ++bad;
      }
      for (std::size_t a = 0; a < classes.size(); ++a)
        for (std::size_t b = a + 1; b < classes.size(); ++b) {
          std::vector<std::size_t> common;
          std::set_intersection(classes[a].begin(), classes[a].end(), classes[b].begin(), classes[b].end(),
                                std::back_inserter(common));
          if (!common.empty() && classes[a] != classes[b]) ++bad;
        }
    }
  }
  return detail::graded("q_partition", static_cast<double>(bad), 0.0, "n <= " + std::to_string(top));
}

// ---------------------------------------------------------------------------
// Sampler

/// Pushforward of the independent truncated-geometric code law through
/// decode_lehmer, compared atomwise to q^l / Z. `corrupt_decode` swaps the
/// first two output values (negative control).
inline CheckResult check_sampler_exactness(std::size_t max_n, const std::vector<double>& qs,
                                           bool corrupt_decode = false) {
  const std::size_t top = std::min<std::size_t>(max_n, 6);
  if (top < 1 || qs.empty()) return detail::skipped("sampler_exactness", "no sizes or q values");
  double worst = 0.0;
  for (std::size_t n = 1; n <= top; ++n)
    for (double q : qs) {
      const auto exact = enumerate_measure(n, q);
      std::vector<double> pushed(exact.probs.size(), 0.0);
      detail::for_each_code(n, [&](const LehmerCode& code) {
        double p = 1.0;
        for (std::size_t k = 0; k < n; ++k)
          p *= detail::truncated_geometric_pmf(q, static_cast<std::uint32_t>(n - 1 - k), code.c[k]);
        auto perm = decode_lehmer(code);
        if (corrupt_decode && n >= 2) {
          std::vector<std::uint32_t> v(perm.values().begin(), perm.values().end());
          std::swap(v[0], v[1]);
          perm = from_trusted(std::move(v));
        }
        pushed[exact.index_of(perm)] += p;
      });
      for (std::size_t k = 0; k < pushed.size(); ++k) worst = std::max(worst, std::abs(pushed[k] - exact.probs[k]));
    }
  return detail::graded("sampler_exactness", worst, kExactTol,
                        "n <= " + std::to_string(top) + ", q in {" + detail::q_list_text(qs) + "}" +
                            (corrupt_decode ? " [corrupted decode]" : ""));
}

/// sum(code) == l(decode(code)) for every code.
inline CheckResult check_code_sum(std::size_t max_n) {
  const std::size_t top = std::min<std::size_t>(max_n, 6);
  if (top < 1) return detail::skipped("code_sum", "no sizes");
  std::size_t bad = 0;
  for (std::size_t n = 1; n <= top; ++n)
    detail::for_each_code(n, [&](const LehmerCode& code) {
      const auto p = decode_lehmer(code);
      if (code.sum() != inversion_number(p) || lehmer_code(p).c != code.c) ++bad;
    });
  return detail::graded("code_sum", static_cast<double>(bad), 0.0, "n <= " + std::to_string(top));
}

/// Closed-form q-factorial vs brute-force normalizer (relative error).
inline CheckResult check_partition_function(std::size_t max_n, const std::vector<double>& qs) {
  const std::size_t top = std::min<std::size_t>(max_n, 8);
  if (top < 1 || qs.empty()) return detail::skipped("partition_function", "no sizes or q values");
  double worst = 0.0;
  for (std::size_t n = 1; n <= top; ++n)
    for (double q : qs) {
      const double brute = enumerate_measure(n, q).normalizer;
      worst = std::max(worst, std::abs(partition_function(n, q) - brute) / brute);
    }
  return detail::graded("partition_function", worst, kExactTol,
                        "n <= " + std::to_string(top) + ", q in {" + detail::q_list_text(qs) + "}");
}

// ---------------------------------------------------------------------------
// Distributional identities

/// Reversal maps μ_{n,q} to μ_{n,1/q}; inversion preserves μ_{n,q}.
inline CheckResult check_reversal_inverse(std::size_t max_n, const std::vector<double>& qs) {
  const std::size_t top = std::min<std::size_t>(max_n, 6);
  if (top < 2 || qs.empty()) return detail::skipped("reversal_inverse", "needs n >= 2");
  double worst = 0.0;
  for (std::size_t n = 2; n <= top; ++n)
    for (double q : qs) {
      const auto d = enumerate_measure(n, q);
      const auto flipped = enumerate_measure(n, 1.0 / q);
      const auto rev = pushforward(d, n, [](const Permutation& p) { return reverse(p); });
      const auto inv = pushforward(d, n, [](const Permutation& p) { return inverse(p); });
      for (std::size_t k = 0; k < rev.size(); ++k)
        worst = std::max({worst, std::abs(rev[k] - flipped.probs[k]), std::abs(inv[k] - d.probs[k])});
    }
  return detail::graded("reversal_inverse", worst, kExactTol, "n <= " + std::to_string(top));
}

/// π_{[1,k]} ~ μ_{k,q}, π_{[k+1,n]} ~ μ_{n-k,q}, and the two are independent.
inline CheckResult check_restriction(std::size_t max_n, const std::vector<double>& qs) {
  const std::size_t top = std::min<std::size_t>(max_n, 6);
  if (top < 3 || qs.empty()) return detail::skipped("restriction", "needs n >= 3");
  double worst = 0.0;
  for (std::size_t n = 3; n <= top; ++n)
    for (double q : qs) {
      const auto d = enumerate_measure(n, q);
      for (std::size_t k = 2; k + 2 <= n; ++k) {
        const auto head = enumerate_measure(k, q);
        const auto tail = enumerate_measure(n - k, q);
        std::vector<double> joint(head.probs.size() * tail.probs.size(), 0.0);
        for (std::size_t idx = 0; idx < d.perms.size(); ++idx) {
          const auto h = head.index_of(restrict_to(d.perms[idx], 1, k));
          const auto t = tail.index_of(restrict_to(d.perms[idx], k + 1, n));
          joint[h * tail.probs.size() + t] += d.probs[idx];
        }
        for (std::size_t h = 0; h < head.probs.size(); ++h)
          for (std::size_t t = 0; t < tail.probs.size(); ++t)
            worst = std::max(worst, std::abs(joint[h * tail.probs.size() + t] - head.probs[h] * tail.probs[t]));
      }
      // Also the single-block edge cases k = 1 .. n-1 for the head marginal.
      for (std::size_t k = 2; k < n; ++k) {
        const auto head = enumerate_measure(k, q);
        const auto pushed = pushforward(d, k, [k](const Permutation& p) { return restrict_to(p, 1, k); });
        for (std::size_t h = 0; h < pushed.size(); ++h) worst = std::max(worst, std::abs(pushed[h] - head.probs[h]));
      }
    }
  return detail::graded("restriction", worst, kExactTol, "n <= " + std::to_string(top) + ", all split points");
}

// ---------------------------------------------------------------------------
// Ratio and interval bounds

/// min(q^d, q^-d) <= P(π(i)=s) / P(π(i)=t) <= max(q^d, q^-d), d = |s-t|.
inline CheckResult check_value_ratio_bound(std::size_t max_n, const std::vector<double>& qs) {
  const std::size_t top = std::min<std::size_t>(max_n, 6);
  if (top < 2 || qs.empty()) return detail::skipped("value_ratio_bound", "needs n >= 2");
  std::size_t bad = 0;
  for (std::size_t n = 2; n <= top; ++n)
    for (double q : qs) {
      const auto d = enumerate_measure(n, q);
      for (std::size_t i = 1; i <= n; ++i) {
        const auto marg = exact_point_marginal(d, i);
        for (std::size_t s = 1; s <= n; ++s)
          for (std::size_t t = 1; t <= n; ++t)
            if (!detail::ratio_within(marg[s - 1], marg[t - 1], q, s > t ? s - t : t - s)) ++bad;
      }
    }
  return detail::graded("value_ratio_bound", static_cast<double>(bad), 0.0,
                        "violations, n <= " + std::to_string(top) + ", q in {" + detail::q_list_text(qs) + "}");
}

/// Same bound across positions: P(π(s)=i) / P(π(t)=i), d = |s-t|.
inline CheckResult check_position_ratio_bound(std::size_t max_n, const std::vector<double>& qs) {
  const std::size_t top = std::min<std::size_t>(max_n, 6);
  if (top < 2 || qs.empty()) return detail::skipped("position_ratio_bound", "needs n >= 2");
  std::size_t bad = 0;
  for (std::size_t n = 2; n <= top; ++n)
    for (double q : qs) {
      const auto d = enumerate_measure(n, q);
      std::vector<std::vector<double>> marg;
      for (std::size_t s = 1; s <= n; ++s) marg.push_back(exact_point_marginal(d, s));
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t s = 1; s <= n; ++s)
          for (std::size_t t = 1; t <= n; ++t)
            if (!detail::ratio_within(marg[s - 1][i - 1], marg[t - 1][i - 1], q, s > t ? s - t : t - s)) ++bad;
    }
  return detail::graded("position_ratio_bound", static_cast<double>(bad), 0.0,
                        "violations, n <= " + std::to_string(top) + ", q in {" + detail::q_list_text(qs) + "}");
}

/// Pairwise position ratio with a third position w held at value j.
/// interior == false: only w < min(s,t) or w > max(s,t) (asserted).
/// interior == true: min(s,t) < w < max(s,t), recorded without asserting.
inline CheckResult check_pair_ratio_bound(std::size_t max_n, const std::vector<double>& qs, bool interior = false) {
  const std::string name = interior ? "pair_ratio_bound_interior_w" : "pair_ratio_bound";
  const std::size_t top = std::min<std::size_t>(max_n, 6);
  if (top < 3 || qs.empty()) return detail::skipped(name, "needs n >= 3");
  std::size_t bad = 0, cases = 0;
  for (std::size_t n = 3; n <= top; ++n)
    for (double q : qs) {
      const auto joint = detail::joint_table(enumerate_measure(n, q));
      for (std::size_t s = 1; s <= n; ++s)
        for (std::size_t t = 1; t <= n; ++t)
          for (std::size_t w = 1; w <= n; ++w) {
            const bool outside = w < std::min(s, t) || w > std::max(s, t);
            const bool inside = w > std::min(s, t) && w < std::max(s, t);
            if (interior ? !inside : !outside) continue;
            for (std::size_t i = 1; i <= n; ++i)
              for (std::size_t j = 1; j <= n; ++j) {
                if (i == j) continue;
                ++cases;
                if (!detail::ratio_within(joint.at(s, w, i, j), joint.at(t, w, i, j), q, s > t ? s - t : t - s)) ++bad;
              }
          }
    }
  const std::string detail_text = std::to_string(bad) + " violations in " + std::to_string(cases) + " cases, n <= " +
                                  std::to_string(top) + ", q in {" + detail::q_list_text(qs) + "}";
  if (interior) return {name, CheckStatus::recorded, static_cast<double>(bad), 0.0, detail_text};
  return detail::graded(name, static_cast<double>(bad), 0.0, detail_text);
}

/// |P(π(s) ∈ A) - P(π(t) ∈ A)| <= max(|1-q^d|, |1-q^-d|) over all value intervals A.
inline CheckResult check_interval_difference_bound(std::size_t max_n, const std::vector<double>& qs) {
  const std::size_t top = std::min<std::size_t>(max_n, 6);
  if (top < 2 || qs.empty()) return detail::skipped("interval_difference_bound", "needs n >= 2");
  std::size_t bad = 0;
  double worst_excess = -1.0;
  for (std::size_t n = 2; n <= top; ++n)
    for (double q : qs) {
      const auto d = enumerate_measure(n, q);
      std::vector<std::vector<double>> marg;
      for (std::size_t s = 1; s <= n; ++s) marg.push_back(exact_point_marginal(d, s));
      for (std::size_t lo = 1; lo <= n; ++lo)
        for (std::size_t hi = lo; hi <= n; ++hi)
          for (std::size_t s = 1; s <= n; ++s)
            for (std::size_t t = s + 1; t <= n; ++t) {
              double ps = 0.0, pt = 0.0;
              for (std::size_t v = lo; v <= hi; ++v) {
                ps += marg[s - 1][v - 1];
                pt += marg[t - 1][v - 1];
              }
              const double excess = std::abs(ps - pt) - detail::interval_bound(q, t - s);
              worst_excess = std::max(worst_excess, excess);
              if (excess > kExactTol) ++bad;
            }
    }
  return detail::graded("interval_difference_bound", static_cast<double>(bad), 0.0,
                        "violations, n <= " + std::to_string(top) + ", max excess over bound " + format_short(worst_excess));
}

/// Joint version: |P(π(s)∈A, π(w)∈B) - P(π(t)∈A, π(w)∈B)| <= M, w outside [s,t].
inline CheckResult check_pair_interval_difference_bound(std::size_t max_n, const std::vector<double>& qs) {
  const std::size_t top = std::min<std::size_t>(max_n, 6);
  if (top < 3 || qs.empty()) return detail::skipped("pair_interval_difference_bound", "needs n >= 3");
  std::size_t bad = 0;
  for (std::size_t n = 3; n <= top; ++n)
    for (double q : qs) {
      const auto joint = detail::joint_table(enumerate_measure(n, q));
      for (std::size_t s = 1; s <= n; ++s)
        for (std::size_t t = 1; t <= n; ++t)
          for (std::size_t w = 1; w <= n; ++w) {
            if (!(w < std::min(s, t) || w > std::max(s, t))) continue;
            const double bound = detail::interval_bound(q, t - s);
            for (std::size_t alo = 1; alo <= n; ++alo)
              for (std::size_t ahi = alo; ahi <= n; ++ahi)
                for (std::size_t blo = 1; blo <= n; ++blo)
                  for (std::size_t bhi = blo; bhi <= n; ++bhi) {
                    double ps = 0.0, pt = 0.0;
                    for (std::size_t i = alo; i <= ahi; ++i)
                      for (std::size_t j = blo; j <= bhi; ++j) {
                        if (i == j) continue;
                        ps += joint.at(s, w, i, j);
                        pt += joint.at(t, w, i, j);
                      }
                    if (std::abs(ps - pt) > bound + kExactTol) ++bad;
                  }
          }
    }
  return detail::graded("pair_interval_difference_bound", static_cast<double>(bad), 0.0,
                        "violations, n <= " + std::to_string(top));
}

// ---------------------------------------------------------------------------
// Density identities

namespace detail {

inline const QuadratureConfig& tight_quadrature() {
  static const QuadratureConfig cfg{1e-12, 400000};
  return cfg;
}

}  // namespace detail

/// ∫_0^1 u(x, y) dx = 1, both through the closed-form CDF (u is symmetric,
/// so this is u_cdf(y, 1)) and by direct quadrature of u.
inline CheckResult check_density_marginals() {
  double worst = 0.0;
  for (double beta : {-10.0, -2.0, -0.5, 0.0, 0.5, 2.0, 10.0})
    for (int k = 0; k <= 100; ++k) {
      const double y = k / 100.0;
      const double closed = u_cdf(y, 1.0, {beta});
      const double quad = integrate([&](double x) { return u_density(x, y, {beta}); }, 0.0, 1.0,
                                    detail::tight_quadrature());
      worst = std::max({worst, std::abs(closed - 1.0), std::abs(quad - 1.0)});
    }
  return detail::graded("density_marginals", worst, 1e-9, "101 y values x 7 beta values");
}

/// ∂²ln u/∂x∂y = 2βu by central differences, h = 1e-4, relative error.
inline CheckResult check_log_density_pde() {
  const double h = 1e-4;
  double worst = 0.0;
  for (double beta : {-5.0, -2.0, -0.5, 0.5, 2.0, 5.0})
    for (int i = 1; i <= 9; ++i)
      for (int j = 1; j <= 9; ++j) {
        const double x = i / 10.0, y = j / 10.0;
        const DensityParams p{beta};
        const double fd = (log_u(x + h, y + h, p) - log_u(x + h, y - h, p) - log_u(x - h, y + h, p) +
                           log_u(x - h, y - h, p)) /
                          (4.0 * h * h);
        const double target = 2.0 * beta * u_density(x, y, p);
        worst = std::max(worst, std::abs(fd - target) / std::abs(target));
      }
  return detail::graded("log_density_pde", worst, 1e-5, "interior 9x9 grid, beta in {+-0.5,+-2,+-5}");
}

/// -β ∫_c^d (1 - 2∫_0^a u(x,y) dx) dy = ln(u(a,d)/u(a,c)) on random tuples.
inline CheckResult check_log_ratio_identity(std::size_t tuples = 100, std::uint64_t seed = 20261016) {
  Engine rng = make_engine(SeedSpec{seed}, 1);
  const std::array<double, 4> betas{1.0, -1.0, 3.0, -3.0};
  double worst = 0.0;
  for (std::size_t k = 0; k < tuples; ++k) {
    const double beta = betas[k % betas.size()];
    const double a = uniform01(rng), c = uniform01(rng), d = uniform01(rng);
    const double lo = std::min(c, d), hi = std::max(c, d);
    const double mass = u_rect(Rect::closed(0.0, a, lo, hi), {beta}, detail::tight_quadrature());
    const double oriented = d >= c ? 1.0 : -1.0;
    const double lhs = -beta * oriented * ((hi - lo) - 2.0 * mass);
    const double rhs = log_u(a, d, {beta}) - log_u(a, c, {beta});
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return detail::graded("log_ratio_identity", worst, 1e-8, std::to_string(tuples) + " random (a,c,d,beta)");
}

/// ∫_0^y u(a,t,β) dt = ∫_0^{y'} u(a/b,t,bβ) dt with y' = u([0,b]x[0,y])/b.
inline CheckResult check_scaling_identity(std::size_t tuples = 100, std::uint64_t seed = 20261016) {
  Engine rng = make_engine(SeedSpec{seed}, 2);
  double worst = 0.0;
  for (std::size_t k = 0; k < tuples; ++k) {
    const double b = 0.05 + 0.95 * uniform01(rng);
    const double a = b * uniform01(rng);
    const double y = uniform01(rng);
    const double beta = -5.0 + 10.0 * uniform01(rng);
    const double yp = rescaled_point(a, b, y, {beta}, detail::tight_quadrature());
    const double lhs = u_cdf(a, y, {beta});
    const double rhs = u_cdf(std::min(a / b, 1.0), yp, {b * beta});
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return detail::graded("scaling_identity", worst, 1e-8, std::to_string(tuples) + " random (a,b,y,beta)");
}

/// u(x,y,β) == u(y,x,β) bit for bit.
inline CheckResult check_density_symmetry() {
  std::size_t bad = 0;
  for (double beta : {-50.0, -3.0, -1e-7, 0.7, 4.0, 300.0})
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        const double x = i / 20.0 + 0.013 * (i % 3), y = j / 20.0;
        if (x > 1.0) continue;
        if (u_density(x, y, {beta}) != u_density(y, x, {beta})) ++bad;
      }
  return detail::graded("density_symmetry", static_cast<double>(bad), 0.0, "bitwise, 6 beta values");
}

/// |u(x,y,1e-8) - 1| < 1e-6 on a 21x21 grid, and the small-beta branch joins
/// the general formula continuously at the threshold.
inline CheckResult check_small_beta_continuity() {
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const double x = i / 20.0, y = j / 20.0;
      worst = std::max(worst, std::abs(u_density(x, y, {1e-8}) - 1.0));
      worst = std::max(worst, std::abs(u_density(x, y, {kSmallBeta * 0.999}) - u_density(x, y, {kSmallBeta * 1.001})));
    }
  return detail::graded("small_beta_continuity", worst, 1e-6, "21x21 grid");
}

/// Closed-form CDF vs adaptive quadrature of u on random inputs.
inline CheckResult check_cdf_vs_quadrature(std::size_t tuples = 200, std::uint64_t seed = 20261016) {
  Engine rng = make_engine(SeedSpec{seed}, 3);
  double worst = 0.0;
  for (std::size_t k = 0; k < tuples; ++k) {
    const double a = uniform01(rng), y = uniform01(rng);
    const double beta = -20.0 + 40.0 * uniform01(rng);
    const double quad = integrate([&](double t) { return u_density(a, t, {beta}); }, 0.0, y, detail::tight_quadrature());
    worst = std::max(worst, std::abs(quad - u_cdf(a, y, {beta})));
  }
  return detail::graded("cdf_vs_quadrature", worst, 1e-9, std::to_string(tuples) + " random (a,y,beta), |beta| <= 20");
}

/// Both marginals of ρ equal 1 at 21 grid points (nested quadrature of ρ).
inline CheckResult check_rho_marginals(RhoParams params = {2.0, -1.0}) {
  double worst = 0.0;
  const QuadratureConfig inner{1e-12, 400000};
  const QuadratureConfig outer{1e-11, 400000};
  for (int k = 0; k <= 20; ++k) {
    const double z = k / 20.0;
    const double row = integrate([&](double y) { return rho_density(z, y, params, inner); }, 0.0, 1.0, outer);
    const double col = integrate([&](double x) { return rho_density(x, z, params, inner); }, 0.0, 1.0, outer);
    worst = std::max({worst, std::abs(row - 1.0), std::abs(col - 1.0)});
  }
  return detail::graded("rho_marginals", worst, 1e-8,
                        "beta=" + format_short(params.beta) + ", gamma=" + format_short(params.gamma) + ", 21 points");
}

/// γ = 0 makes ρ ≡ 1.
inline CheckResult check_rho_gamma_zero(double beta = 2.0) {
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    const double y = 1.0 - x * 0.77;
    worst = std::max(worst, std::abs(rho_density(x, y, {beta, 0.0}, detail::tight_quadrature()) - 1.0));
  }
  return detail::graded("rho_gamma_zero", worst, 1e-8, "beta=" + format_short(beta) + ", 21 points");
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::size_t max_n = 6;
  std::vector<double> q_list{0.3, 0.8, 1.0, 1.25};
  bool include_density = true;
  bool corrupt_decode = false;  // negative control for the sampler row
};

inline std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
  if (opt.max_n < 1 || opt.max_n > kMaxEnumerationSize)
    throw InvalidArgument("verify: max_n must be in 1..9");
  for (double q : opt.q_list)
    if (!(q > 0.0) || !std::isfinite(q)) throw InvalidArgument("verify: every q must be finite and > 0");
  std::vector<CheckResult> out;
  out.push_back(check_inversion_counts(opt.max_n));
  out.push_back(check_inversion_delta(opt.max_n));
  out.push_back(check_q_partition(opt.max_n));
  out.push_back(check_sampler_exactness(opt.max_n, opt.q_list, opt.corrupt_decode));
  out.push_back(check_code_sum(opt.max_n));
  out.push_back(check_partition_function(opt.max_n, opt.q_list));
  out.push_back(check_reversal_inverse(opt.max_n, opt.q_list));
  out.push_back(check_restriction(opt.max_n, opt.q_list));
  out.push_back(check_value_ratio_bound(opt.max_n, opt.q_list));
  out.push_back(check_position_ratio_bound(opt.max_n, opt.q_list));
  out.push_back(check_pair_ratio_bound(opt.max_n, opt.q_list, false));
  out.push_back(check_pair_ratio_bound(opt.max_n, opt.q_list, true));
  out.push_back(check_interval_difference_bound(opt.max_n, opt.q_list));
  out.push_back(check_pair_interval_difference_bound(opt.max_n, opt.q_list));
  if (opt.include_density) {
    out.push_back(check_density_marginals());
    out.push_back(check_log_density_pde());
    out.push_back(check_log_ratio_identity());
    out.push_back(check_scaling_identity());
    out.push_back(check_density_symmetry());
    out.push_back(check_small_beta_continuity());
    out.push_back(check_cdf_vs_quadrature());
    out.push_back(check_rho_marginals());
    out.push_back(check_rho_gamma_zero());
  }
  return out;
}

}  // namespace mallows
