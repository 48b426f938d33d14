#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "mallows/errors.hpp"

namespace mallows {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  std::size_t max_subdivisions = 200000;

  void validate() const {
    detail::require(abs_tol > 0.0, "quadrature abs_tol must be > 0");
    detail::require(max_subdivisions >= 1, "quadrature max_subdivisions must be >= 1");
  }
};

namespace detail {

inline constexpr std::size_t kGaussOrder = 10;

struct GaussRule {
  std::array<double, kGaussOrder> nodes{};
  std::array<double, kGaussOrder> weights{};
};

// Legendre roots by Newton iteration from the Chebyshev-like initial guess.
inline GaussRule make_gauss_rule() {
  GaussRule rule;
  constexpr std::size_t n = kGaussOrder;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

inline const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

template <class F>
double gauss_panel(F& f, double a, double b) {
  const auto& rule = gauss_rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < kGaussOrder; ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

}  // namespace detail

/// Adaptive composite Gauss-Legendre: a panel is accepted when its 10-point
/// value agrees with the sum over its two halves to within its share of
/// abs_tol (share proportional to panel width).
template <class F>
double integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  cfg.validate();
  if (a == b) return 0.0;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double width = b - a;
  struct Panel {
    double a, b, whole;
  };
  std::vector<Panel> stack;
  stack.push_back({a, b, detail::gauss_panel(f, a, b)});
  double total = 0.0;
  std::size_t splits = 0;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.a + p.b);
    const double left = detail::gauss_panel(f, p.a, mid);
    const double right = detail::gauss_panel(f, mid, p.b);
    const double refined = left + right;
    const double allowed = cfg.abs_tol * (p.b - p.a) / width;
    if (!std::isfinite(refined)) throw NumericError("quadrature: non-finite integrand");
    if (std::abs(refined - p.whole) <= allowed || mid <= p.a || mid >= p.b) {
      total += refined;
      continue;
    }
    if (++splits > cfg.max_subdivisions)
      throw NumericError("quadrature did not converge within " +
                         std::to_string(cfg.max_subdivisions) + " subdivisions");
    stack.push_back({p.a, mid, left});
    stack.push_back({mid, p.b, right});
  }
  return sign * total;
}

}  // namespace mallows
