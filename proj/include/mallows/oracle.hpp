#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mallows/errors.hpp"
#include "mallows/permutation.hpp"
#include "mallows/sampler.hpp"

namespace mallows {

inline constexpr std::size_t kMaxEnumerationSize = 9;

/// μ_{n,q} tabulated over all of S_n in lexicographic order.
struct ExactDistribution {
  std::size_t n = 0;
  double q = 1.0;
  std::vector<Permutation> perms;
  std::vector<double> probs;
  double normalizer = 0.0;  // brute-force Σ q^{l(π)}

  // Lexicographic rank; the factorial-base digits are the Lehmer code.
  std::size_t index_of(const Permutation& p) const {
    detail::require(p.size() == n, "index_of: size mismatch");
    const auto code = lehmer_code(p);
    std::size_t rank = 0;
    for (std::size_t k = 0; k < n; ++k) rank = rank * (n - k) + code.c[k];
    return rank;
  }

  double prob(const Permutation& p) const { return probs[index_of(p)]; }
};

inline std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

inline ExactDistribution enumerate_measure(std::size_t n, double q) {
  detail::require(n >= 1, "enumerate_measure: n must be >= 1");
  if (n > kMaxEnumerationSize)
    throw InvalidArgument("enumerate_measure: n=" + std::to_string(n) + " exceeds the enumeration limit of 9");
  MallowsParams{n, q}.validate();
  ExactDistribution d{n, q, {}, {}, 0.0};
  const std::size_t count = factorial(n);
  d.perms.reserve(count);
  d.probs.reserve(count);
  std::vector<std::uint32_t> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = static_cast<std::uint32_t>(k + 1);
  do {
    d.perms.push_back(from_trusted(v));
    d.probs.push_back(std::pow(q, static_cast<double>(inversion_number(d.perms.back()))));
  } while (std::next_permutation(v.begin(), v.end()));
  for (double w : d.probs) d.normalizer += w;
  for (double& w : d.probs) w /= d.normalizer;
  return d;
}

/// Z_{n,q} = Π_{i=1}^{n} (1 + q + ... + q^{i-1}).
inline double partition_function(std::size_t n, double q) {
  detail::require(n >= 1, "partition_function: n must be >= 1");
  detail::require(q > 0.0, "partition_function: q must be > 0");
  double z = 1.0;
  double bracket = 1.0;  // [i]_q
  double power = 1.0;
  for (std::size_t i = 2; i <= n; ++i) {
    power *= q;
    bracket += power;
    z *= bracket;
  }
  return z;
}

/// P(π(i) = j) for j = 1..n, returned 0-based.
inline std::vector<double> exact_point_marginal(const ExactDistribution& d, std::size_t i) {
  detail::require(i >= 1 && i <= d.n, "exact_point_marginal: index out of range");
  std::vector<double> out(d.n, 0.0);
  for (std::size_t k = 0; k < d.perms.size(); ++k) out[d.perms[k](i) - 1] += d.probs[k];
  return out;
}

/// P(π(s) = i, π(w) = j).
inline double exact_pair_probability(const ExactDistribution& d, std::size_t s, std::size_t w, std::size_t i,
                                     std::size_t j) {
  detail::require(s >= 1 && s <= d.n && w >= 1 && w <= d.n, "exact_pair_probability: position out of range");
  detail::require(i >= 1 && i <= d.n && j >= 1 && j <= d.n, "exact_pair_probability: value out of range");
  if (s == w || i == j) throw InvalidArgument("exact_pair_probability: conflicting arguments (s == w or i == j)");
  double p = 0.0;
  for (std::size_t k = 0; k < d.perms.size(); ++k)
    if (d.perms[k](s) == i && d.perms[k](w) == j) p += d.probs[k];
  return p;
}

/// Inclusive value range {lo..hi} standing for a real interval A: value v is
/// in A iff v/n ∈ A.
struct ValueInterval {
  std::size_t lo = 1;
  std::size_t hi = 0;

  bool contains(std::size_t v) const { return v >= lo && v <= hi; }

  // Values v in 1..n with y1 <= v/n <= y2.
  static ValueInterval from_real(double y1, double y2, std::size_t n) {
    ValueInterval out{n + 1, 0};
    const double nd = static_cast<double>(n);
    for (std::size_t v = 1; v <= n; ++v) {
      const double x = static_cast<double>(v) / nd;
      if (x >= y1 && x <= y2) {
        out.lo = std::min(out.lo, v);
        out.hi = std::max(out.hi, v);
      }
    }
    return out;
  }
};

/// P(π(s) ∈ A).
inline double exact_interval_probability(const ExactDistribution& d, std::size_t s, ValueInterval a) {
  const auto marg = exact_point_marginal(d, s);
  double p = 0.0;
  for (std::size_t v = 1; v <= d.n; ++v)
    if (a.contains(v)) p += marg[v - 1];
  return p;
}

/// Cov(1_A(π(i)), 1_A(π(j))) under the exact distribution.
inline double exact_indicator_covariance(const ExactDistribution& d, ValueInterval a, std::size_t i, std::size_t j) {
  detail::require(i >= 1 && i <= d.n && j >= 1 && j <= d.n, "exact_indicator_covariance: index out of range");
  if (i == j) throw InvalidArgument("exact_indicator_covariance: need i != j");
  double both = 0.0, pi = 0.0, pj = 0.0;
  for (std::size_t k = 0; k < d.perms.size(); ++k) {
    const bool in_i = a.contains(d.perms[k](i));
    const bool in_j = a.contains(d.perms[k](j));
    if (in_i) pi += d.probs[k];
    if (in_j) pj += d.probs[k];
    if (in_i && in_j) both += d.probs[k];
  }
  return both - pi * pj;
}

/// Image of `d` under `f`, tabulated over S_k in lexicographic order.
inline std::vector<double> pushforward(const ExactDistribution& d, std::size_t k,
                                       const std::function<Permutation(const Permutation&)>& f) {
  ExactDistribution shape{k, d.q, {}, {}, 0.0};
  std::vector<double> out(factorial(k), 0.0);
  for (std::size_t idx = 0; idx < d.perms.size(); ++idx) out[shape.index_of(f(d.perms[idx]))] += d.probs[idx];
  return out;
}

/// ½ Σ |p1 - p2| over a shared support.
inline double tv_distance(std::span<const double> p1, std::span<const double> p2) {
  if (p1.size() != p2.size()) throw InvalidArgument("tv_distance: mismatched supports");
  double s = 0.0;
  for (std::size_t k = 0; k < p1.size(); ++k) s += std::abs(p1[k] - p2[k]);
  return 0.5 * s;
}

}  // namespace mallows
