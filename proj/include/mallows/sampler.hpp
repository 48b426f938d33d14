#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "mallows/errors.hpp"
#include "mallows/fenwick.hpp"
#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"

namespace mallows {

/// Size n and ratio q of the Mallows measure μ_{n,q}(π) ∝ q^{l(π)}.
struct MallowsParams {
  std::size_t n = 1;
  double q = 1.0;

  void validate() const {
    detail::require(n >= 1, "Mallows n must be >= 1");
    detail::require(std::isfinite(q) && q > 0.0, "Mallows q must be finite and > 0");
  }
};

/// q_n = 1 - beta/n. The limits only need n(1 - q_n) -> beta; this is the
/// schedule every experiment uses.
struct BetaSchedule {
  double beta = 0.0;

  double q(std::size_t n) const {
    const double q = 1.0 - beta / static_cast<double>(n);
    if (!(q > 0.0) || !std::isfinite(q))
      throw InvalidArgument("q_n = 1 - beta/n must be > 0 (beta=" + std::to_string(beta) +
                            ", n=" + std::to_string(n) + ")");
    return q;
  }

  MallowsParams params(std::size_t n) const { return {n, q(n)}; }
};

inline double q_from_beta(std::size_t n, double beta) {
  detail::require(n >= 1, "n must be >= 1");
  return BetaSchedule{beta}.q(n);
}

/// Inversion table: c[i] = #{j > i : π(j) < π(i)}, stored 0-based so that
/// entry k (0-based) lies in 0..n-1-k.
struct LehmerCode {
  std::vector<std::uint32_t> c;

  std::size_t size() const { return c.size(); }

  std::uint64_t sum() const {
    return std::accumulate(c.begin(), c.end(), std::uint64_t{0});
  }
};

inline LehmerCode lehmer_code(const Permutation& p) {
  const std::size_t n = p.size();
  LehmerCode code{std::vector<std::uint32_t>(n)};
  FenwickTree seen(n);
  for (std::size_t k = n; k-- > 0;) {
    const auto v = p.values()[k];
    code.c[k] = static_cast<std::uint32_t>(seen.prefix(v - 1));
    seen.add(v, 1);
  }
  return code;
}

/// π(i) is the (c[i]+1)-th smallest value not used by π(1..i-1).
inline Permutation decode_lehmer(const LehmerCode& code) {
  const std::size_t n = code.size();
  detail::require(n >= 1, "Lehmer code must be nonempty");
  for (std::size_t k = 0; k < n; ++k)
    if (code.c[k] > n - 1 - k)
      detail::fail("Lehmer code entry " + std::to_string(k + 1) + " out of range");
  FenwickTree unused = FenwickTree::all_ones(n);
  std::vector<std::uint32_t> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t v = unused.select(static_cast<std::int64_t>(code.c[k]) + 1);
    unused.add(v, -1);
    out[k] = static_cast<std::uint32_t>(v);
  }
  return from_trusted(std::move(out));
}

/// Inverse-CDF draw from P(k) ∝ q^k on {0..m} for one uniform u in [0,1).
///
/// k = floor(log(1 - u(1 - q^{m+1})) / log q), written with log1p/expm1 so it
/// stays monotone in u for q within 1e-9 of 1. q == 1 is the exact uniform.
inline std::uint32_t truncated_geometric_from_uniform(double q, std::uint32_t m, double u) {
  if (m == 0) return 0;
  double k;
  if (q == 1.0) {
    k = std::floor(u * (static_cast<double>(m) + 1.0));
  } else {
    const double log_q = (q > 0.5 && q < 2.0) ? std::log1p(q - 1.0) : std::log(q);
    const double x = (static_cast<double>(m) + 1.0) * log_q;
    // log(1 - u(1 - q^{m+1})) = log1p(u * expm1(x)); for large positive x
    // factor out e^x to avoid overflow.
    const double t = x > 30.0 ? x + std::log(u + (1.0 - u) * std::exp(-x))
                              : std::log1p(u * std::expm1(x));
    k = std::floor(t / log_q);
  }
  if (!(k >= 0.0)) return 0;  // also catches NaN
  if (k > static_cast<double>(m)) return m;
  return static_cast<std::uint32_t>(k);
}

template <class URBG>
std::uint32_t sample_truncated_geometric(double q, std::uint32_t m, URBG& rng) {
  return truncated_geometric_from_uniform(q, m, uniform01(rng));
}

/// Independent entries c[i] ~ truncated geometric on {0..n-i} with ratio q.
template <class URBG>
LehmerCode sample_lehmer(const MallowsParams& params, URBG& rng) {
  params.validate();
  LehmerCode code{std::vector<std::uint32_t>(params.n)};
  for (std::size_t k = 0; k < params.n; ++k)
    code.c[k] = sample_truncated_geometric(params.q, static_cast<std::uint32_t>(params.n - 1 - k), rng);
  return code;
}

template <class URBG>
Permutation sample_mallows(const MallowsParams& params, URBG& rng) {
  return decode_lehmer(sample_lehmer(params, rng));
}

/// Exact draw from μ_{n,q}; a pure function of (params, seed, stream).
inline Permutation sample_mallows(const MallowsParams& params, const SeedSpec& seed,
                                  std::uint64_t stream) {
  Engine rng = make_engine(seed, stream);
  return sample_mallows(params, rng);
}

}  // namespace mallows
