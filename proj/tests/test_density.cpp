#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mallows/density.hpp"
#include "mallows/quadrature.hpp"
#include "mallows/rng.hpp"

using namespace mallows;

namespace {

constexpr double e = std::numbers::e;

// Textbook form of u, used only as an independent reference at moderate β.
double u_reference(double x, double y, double beta) {
  if (beta == 0.0) return 1.0;
  const double num = (beta / 2.0) * std::sinh(beta / 2.0);
  const double den = std::exp(beta / 4.0) * std::cosh(beta * (x - y) / 2.0) -
                     std::exp(-beta / 4.0) * std::cosh(beta * (x + y - 1.0) / 2.0);
  return num / (den * den);
}

}  // namespace

TEST(Quadrature, Polynomials) {
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 1.0), 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, 0.0, 1.0), e - 1.0, 1e-13);
  EXPECT_NEAR(integrate([](double x) { return x; }, 1.0, 0.0), -0.5, 1e-14);
  EXPECT_EQ(integrate([](double) { return 1.0; }, 0.3, 0.3), 0.0);
}

TEST(Quadrature, ReportsFailure) {
  EXPECT_THROW(integrate([](double) { return NAN; }, 0.0, 1.0), NumericError);
  const QuadratureConfig tiny{1e-15, 2};
  EXPECT_THROW(integrate([](double x) { return std::sqrt(std::abs(x - 0.3)); }, 0.0, 1.0, tiny), NumericError);
  EXPECT_THROW((QuadratureConfig{0.0, 10}.validate()), InvalidArgument);
}

TEST(Density, UniformAtBetaZero) {
  for (double x : {0.0, 0.2, 0.7, 1.0})
    for (double y : {0.0, 0.5, 1.0}) {
      EXPECT_EQ(u_density(x, y, {0.0}), 1.0);
      EXPECT_EQ(log_u(x, y, {0.0}), 0.0);
    }
}

TEST(Density, BoundaryValues) {
  EXPECT_NEAR(u_density(1, 1, {1.0}), e / (e - 1.0), 1e-14);
  EXPECT_NEAR(u_density(1, 1, {1.0}), 1.5819767, 1e-7);
  EXPECT_NEAR(u_density(0, 0.5, {2.0}), 2.0 * std::exp(-1.0) / (1.0 - std::exp(-2.0)), 1e-14);
  EXPECT_NEAR(u_density(0, 0.5, {2.0}), 0.8509181, 1e-7);
  EXPECT_NEAR(log_u(1, 1, {1.0}), std::log(e / (e - 1.0)), 1e-14);
  EXPECT_NEAR(log_u(1, 1, {1.0}), 0.4586751, 1e-7);
}

TEST(Density, MatchesReferenceForm) {
  for (double beta : {-6.0, -1.0, 0.3, 2.0, 7.5})
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; j <= 10; ++j) {
        const double x = i / 10.0, y = j / 10.0;
        EXPECT_NEAR(u_density(x, y, {beta}), u_reference(x, y, beta), 1e-12 * u_reference(x, y, beta));
      }
}

TEST(Density, Symmetry) {
  EXPECT_EQ(u_density(0.3, 0.8, {5.0}), u_density(0.8, 0.3, {5.0}));
  EXPECT_NEAR(u_density(0.3, 0.8, {-5.0}), u_density(0.7, 0.8, {5.0}), 1e-14);
}

TEST(Density, LogSpaceAtHugeBeta) {
  const double l = log_u(0.5, 0.5, {1000.0});
  EXPECT_TRUE(std::isfinite(l));
  // u(1/2, 1/2, b) -> b/4 for large b
  EXPECT_NEAR(l, std::log(250.0), 1e-9);
  EXPECT_TRUE(std::isfinite(log_u(0.1, 0.9, {1000.0})));
  EXPECT_TRUE(std::isfinite(log_u(0.1, 0.1, {-1000.0})));
}

TEST(Density, DomainErrors) {
  EXPECT_THROW(u_density(-0.1, 0.5, {1.0}), InvalidArgument);
  EXPECT_THROW(u_density(0.5, 1.1, {1.0}), InvalidArgument);
  EXPECT_THROW(u_cdf(0.5, NAN, {1.0}), InvalidArgument);
  EXPECT_THROW(log_u(2.0, 0.5, {0.0}), InvalidArgument);
}

TEST(Density, SmallBetaBranchIsContinuous) {
  for (double x : {0.0, 0.25, 0.9})
    for (double y : {0.1, 0.6, 1.0}) {
      const double below = u_density(x, y, {0.99e-6});
      const double above = u_density(x, y, {1.01e-6});
      EXPECT_NEAR(below, above, 1e-8);
      EXPECT_NEAR(u_cdf(x, y, {0.99e-6}), u_cdf(x, y, {1.01e-6}), 1e-8);
    }
}

TEST(Density, CdfValues) {
  for (double beta : {-10.0, -1.0, 1e-7, 0.5, 3.0, 25.0})
    for (double a : {0.0, 0.4, 1.0}) {
      EXPECT_NEAR(u_cdf(a, 1.0, {beta}), 1.0, 1e-14);
      EXPECT_EQ(u_cdf(a, 0.0, {beta}), 0.0);
    }
  EXPECT_NEAR(u_cdf(1.0, 0.5, {1.0}), (std::exp(0.5) - 1.0) / (e - 1.0), 1e-14);
  EXPECT_NEAR(u_cdf(1.0, 0.5, {1.0}), 0.3775407, 1e-7);
}

TEST(Density, CdfMatchesQuadratureOfReference) {
  auto rng = make_engine(SeedSpec{77}, 0);
  for (int k = 0; k < 100; ++k) {
    const double a = uniform01(rng), y = uniform01(rng), beta = -8.0 + 16.0 * uniform01(rng);
    const double ref = integrate([&](double t) { return u_reference(a, t, beta); }, 0.0, y, {1e-13, 100000});
    EXPECT_NEAR(u_cdf(a, y, {beta}), ref, 1e-11);
  }
}

TEST(Density, Rect) {
  EXPECT_NEAR(u_rect(Rect::unit(), {3.0}), 1.0, 1e-10);
  EXPECT_DOUBLE_EQ(u_rect(Rect::half_open(0.1, 0.4, 0.2, 0.7), {0.0}), 0.3 * 0.5);
  EXPECT_NEAR(u_rect(Rect::closed(0.0, 1.0, 0.25, 0.6), {-4.0}), 0.35, 1e-10);
  EXPECT_EQ(u_rect(Rect::closed(0.2, 0.2, 0.0, 1.0), {1.0}), 0.0);
  // symmetric in the two coordinates
  EXPECT_NEAR(u_rect(Rect::half_open(0.1, 0.3, 0.5, 0.9), {2.5}), u_rect(Rect::half_open(0.5, 0.9, 0.1, 0.3), {2.5}),
              1e-12);
}

TEST(Density, RhoBasics) {
  EXPECT_EQ(rho_density(0.2, 0.3, {0.0, 0.0}), 1.0);
  for (double x : {0.0, 0.3, 1.0})
    for (double y : {0.0, 0.6}) EXPECT_NEAR(rho_density(x, y, {4.0, 0.0}), 1.0, 1e-9);
  // ρ_{β,γ}(x,y) = ρ_{γ,β}(y,x)
  for (double x : {0.1, 0.5, 0.8})
    for (double y : {0.2, 0.9}) EXPECT_NEAR(rho_density(x, y, {2.0, -1.0}), rho_density(y, x, {-1.0, 2.0}), 1e-10);
}

TEST(Density, RhoRect) {
  const RhoParams p{2.0, -1.0};
  EXPECT_NEAR(rho_rect(Rect::unit(), p), 1.0, 1e-10);
  EXPECT_DOUBLE_EQ(rho_rect(Rect::half_open(0.1, 0.4, 0.2, 0.7), {0.0, 0.0}), 0.15);
  EXPECT_NEAR(rho_rect(Rect::closed(0.0, 1.0, 0.3, 0.55), p), 0.25, 1e-10);
  EXPECT_NEAR(rho_rect(Rect::closed(0.35, 0.8, 0.0, 1.0), p), 0.45, 1e-10);
  // against direct quadrature of the density
  const Rect r = Rect::half_open(0.2, 0.5, 0.6, 0.9);
  const double direct = integrate(
      [&](double x) {
        return integrate([&](double y) { return rho_density(x, y, p, {1e-13, 100000}); }, r.y1, r.y2,
                         {1e-12, 100000});
      },
      r.x1, r.x2, {1e-11, 100000});
  EXPECT_NEAR(rho_rect(r, p), direct, 1e-9);
}

TEST(Density, RescaledPoint) {
  for (double y : {0.0, 0.3, 0.8}) {
    EXPECT_NEAR(rescaled_point(0.2, 1.0, y, {2.0}), y, 1e-10);
    EXPECT_NEAR(rescaled_point(0.2, 0.6, y, {0.0}), y, 1e-12);
  }
  EXPECT_NEAR(rescaled_point(0.1, 0.5, 1.0, {-3.0}), 1.0, 1e-10);
  EXPECT_THROW(rescaled_point(0.5, 0.4, 0.5, {1.0}), InvalidArgument);
  EXPECT_THROW(rescaled_point(0.0, 0.0, 0.5, {1.0}), InvalidArgument);
}
