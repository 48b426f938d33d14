#pragma once

#include <cmath>
#include <cstdlib>

#include "mallows/errors.hpp"
#include "mallows/quadrature.hpp"
#include "mallows/rect.hpp"

namespace mallows {

/// Limit density u(x, y, beta) of the Mallows permuton:
///
///   u = (β/2) sinh(β/2) / (e^{β/4} cosh(β(x-y)/2) - e^{-β/4} cosh(β(x+y-1)/2))^2,
///   u ≡ 1 at β = 0.
///
/// Evaluation works with b = |β|, p = |x-y|, m = |x+y-1| (p and m swap roles
/// when β < 0). Factoring e^{b/4 + bp/2} out of the denominator leaves
///
///   B = -expm1(-b(1+p-m)/2) + e^{-bp} * -expm1(-b(1-p+m)/2),
///
/// a sum of two nonnegative terms, and u = b (1 - e^{-b}) e^{-bp} / B^2.
/// Nothing cancels, so this holds from |β| ~ 1e-6 up to |β| ~ 1e4.
struct DensityParams {
  double beta = 0.0;
};

/// β and γ of ρ(x,y) = ∫ u(x,t,β) u(t,y,γ) dt.
struct RhoParams {
  double beta = 0.0;
  double gamma = 0.0;
};

inline constexpr double kSmallBeta = 1e-6;

namespace detail {

inline void require_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument(what);
}

// B from the header comment; b > 0.
inline double density_bracket(double b, double p, double m) {
  const double B = -std::expm1(-0.5 * b * (1.0 + p - m)) - std::exp(-b * p) * std::expm1(-0.5 * b * (1.0 - p + m));
  if (!(B > 0.0) || !std::isfinite(B)) throw NumericError("density: nonpositive denominator");
  return B;
}

// log u for β > 0 in canonical (p, m) form.
inline double log_u_positive(double b, double p, double m) {
  const double B = density_bracket(b, p, m);
  return std::log(b) + std::log(-std::expm1(-b)) - b * p - 2.0 * std::log(B);
}

// G(a, y) = -(1/β) ∂_x ln u(a, y) for β = b > 0, so that
// ∫_0^y u(a,t) dt = (G(a,0) - G(a,y)) / 2.
inline double cdf_kernel(double b, double a, double y) {
  const double d = a - y;
  const double s = a + y - 1.0;
  const double ad = std::abs(d);
  const double as = std::abs(s);
  const double sd = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
  const double ss = s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
  const double num = -sd * std::expm1(-b * ad) + ss * std::exp(-0.5 * b * (1.0 + ad - as)) * std::expm1(-b * as);
  return num / density_bracket(b, ad, as);
}

}  // namespace detail

inline double log_u(double x, double y, DensityParams params) {
  detail::require_unit(x, "density: x must lie in [0,1]");
  detail::require_unit(y, "density: y must lie in [0,1]");
  const double beta = params.beta;
  if (std::abs(beta) < kSmallBeta) return 2.0 * beta * (x - 0.5) * (y - 0.5);
  const double p = std::abs(x - y);
  const double m = std::abs(x + y - 1.0);
  return beta > 0.0 ? detail::log_u_positive(beta, p, m) : detail::log_u_positive(-beta, m, p);
}

inline double u_density(double x, double y, DensityParams params) {
  if (std::abs(params.beta) < kSmallBeta) {
    detail::require_unit(x, "density: x must lie in [0,1]");
    detail::require_unit(y, "density: y must lie in [0,1]");
    return 1.0 + 2.0 * params.beta * (x - 0.5) * (y - 0.5);
  }
  return std::exp(log_u(x, y, params));
}

/// ∫_0^y u(a, t, β) dt in closed form.
inline double u_cdf(double a, double y, DensityParams params) {
  detail::require_unit(a, "u_cdf: a must lie in [0,1]");
  detail::require_unit(y, "u_cdf: y must lie in [0,1]");
  const double beta = params.beta;
  if (beta == 0.0) return y;
  if (std::abs(beta) < kSmallBeta) return y + beta * (a - 0.5) * (y * y - y);
  // u(x, y, -b) = u(1 - x, y, b)
  if (beta < 0.0) return u_cdf(1.0 - a, y, {-beta});
  if (y == 0.0) return 0.0;
  const double v = 0.5 * (detail::cdf_kernel(beta, a, 0.0) - detail::cdf_kernel(beta, a, y));
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

/// ∫_r u dx dy: one quadrature over x of the closed-form CDF difference.
inline double u_rect(const Rect& r, DensityParams params, const QuadratureConfig& quad = {}) {
  r.validate();
  if (r.x1 == r.x2 || r.y1 == r.y2) return 0.0;
  if (params.beta == 0.0) return r.area();
  return integrate([&](double x) { return u_cdf(x, r.y2, params) - u_cdf(x, r.y1, params); },
                   r.x1, r.x2, quad);
}

/// ρ(x, y) = ∫_0^1 u(x, t, β) u(t, y, γ) dt.
inline double rho_density(double x, double y, RhoParams params, const QuadratureConfig& quad = {}) {
  detail::require_unit(x, "rho: x must lie in [0,1]");
  detail::require_unit(y, "rho: y must lie in [0,1]");
  if (params.beta == 0.0 && params.gamma == 0.0) return 1.0;
  return integrate([&](double t) { return u_density(x, t, {params.beta}) * u_density(t, y, {params.gamma}); },
                   0.0, 1.0, quad);
}

/// ∫_r ρ dx dy = ∫_0^1 [∫_{x1}^{x2} u(x,t,β) dx] [∫_{y1}^{y2} u(t,y,γ) dy] dt,
/// with both inner integrals taken from u_cdf (u is symmetric in its two
/// coordinates).
inline double rho_rect(const Rect& r, RhoParams params, const QuadratureConfig& quad = {}) {
  r.validate();
  if (r.x1 == r.x2 || r.y1 == r.y2) return 0.0;
  if (params.beta == 0.0 && params.gamma == 0.0) return r.area();
  const DensityParams b{params.beta};
  const DensityParams g{params.gamma};
  return integrate(
      [&](double t) {
        return (u_cdf(t, r.x2, b) - u_cdf(t, r.x1, b)) * (u_cdf(t, r.y2, g) - u_cdf(t, r.y1, g));
      },
      0.0, 1.0, quad);
}

/// y' = u([0,b] x [0,y]) / b, the point at which the CDF of u(a/b, ., bβ)
/// matches the CDF of u(a, ., β) at y.
inline double rescaled_point(double a, double b, double y, DensityParams params,
                             const QuadratureConfig& quad = {}) {
  detail::require(b > 0.0, "rescaled_point: b must be > 0");
  detail::require(a >= 0.0 && a < b && b <= 1.0, "rescaled_point: need 0 <= a < b <= 1");
  detail::require_unit(y, "rescaled_point: y must lie in [0,1]");
  const double v = u_rect(Rect::closed(0.0, b, 0.0, y), params, quad) / b;
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

}  // namespace mallows
