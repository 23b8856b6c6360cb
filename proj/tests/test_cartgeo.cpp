#include <gtest/gtest.h>

#include <algorithm>

#include "geodesy/cartgeo.hpp"
#include "geodesy/polynomial.hpp"
#include "support.hpp"

using namespace geodesy;
using geodesy::test::Sampler;

namespace {

const Ellipsoid kGrs = Ellipsoid::grs();
constexpr IterMethod kMethods[] = {IterMethod::Iter1, IterMethod::Iter2, IterMethod::Iter3};

std::vector<GeodeticCoord> sample_points(int n, double hmin, double hmax, unsigned seed) {
  Sampler s(seed);
  std::vector<GeodeticCoord> pts;
  for (int i = 0; i < n; ++i)
    pts.push_back({Angle::radians(s.uniform(-1.5, 1.5)), Angle::radians(s.uniform(-kPi, kPi)), s.uniform(hmin, hmax)});
  return pts;
}

}  // namespace

TEST(CartToGeodetic, RoundTripAllMethods) {
  for (const auto& g : sample_points(1000, -5000, 1e7, 11)) {
    const auto c = geodetic_to_cart(kGrs, g);
    for (IterMethod m : kMethods) {
      const auto r = cart_to_geodetic_iter(kGrs, c, m);
      ASSERT_NEAR(r.geo.phi.rad(), g.phi.rad(), 1e-10);
      ASSERT_NEAR(r.geo.lambda.rad(), g.lambda.rad(), 1e-12);
      ASSERT_NEAR(r.geo.h, g.h, 1e-4);
      if (r.report.bound_used >= 0) {
        EXPECT_LE(r.report.iterations, r.report.bound_used);
      }
    }
    const auto f = cart_to_geodetic_finite(kGrs, c);
    ASSERT_NEAR(f.phi.rad(), g.phi.rad(), 1e-10);
    ASSERT_NEAR(f.h, g.h, 1e-4);
  }
}

TEST(CartToGeodetic, SeriesImprovesWithOrderOnSurfacePoints) {
  double worst2 = 0, worst4 = 0;
  for (const auto& g : sample_points(200, 0, 0, 12)) {
    const auto c = geodetic_to_cart(kGrs, g);
    worst2 = std::max(worst2, std::abs(cart_to_geodetic_series(kGrs, c, 2).phi.rad() - g.phi.rad()));
    worst4 = std::max(worst4, std::abs(cart_to_geodetic_series(kGrs, c, 4).phi.rad() - g.phi.rad()));
  }
  EXPECT_LT(worst4, 5e-9);
  EXPECT_LT(worst4, worst2);
  EXPECT_THROW(cart_to_geodetic_series(kGrs, {1e6, 0, 1e6}, 5), DomainError);
}

TEST(CartToGeodetic, PolarAxisAndEquator) {
  for (IterMethod m : kMethods) {
    const auto n = cart_to_geodetic_iter(kGrs, {0, 0, kGrs.b() + 10}, m);
    EXPECT_NEAR(n.geo.phi.rad(), kPi / 2, 1e-15);
    EXPECT_NEAR(n.geo.h, 10, 1e-6);
    const auto s = cart_to_geodetic_iter(kGrs, {0, 0, -kGrs.b() - 10}, m);
    EXPECT_NEAR(s.geo.phi.rad(), -kPi / 2, 1e-15);
    const auto e = cart_to_geodetic_iter(kGrs, {kGrs.a() + 5, 0, 0}, m);
    EXPECT_NEAR(e.geo.phi.rad(), 0, 1e-15);
    EXPECT_NEAR(e.geo.h, 5, 1e-6);
  }
  EXPECT_NEAR(cart_to_geodetic_finite(kGrs, {0, 0, kGrs.b()}).phi.rad(), kPi / 2, 1e-15);
}

TEST(IterationBound, SmallestIterationCount) {
  EXPECT_EQ(iteration_bound(0.5, 1.0, 1e-6), 20);
  EXPECT_EQ(iteration_bound(0.1, 1.0, 1e-6), 6);
  EXPECT_EQ(iteration_bound(0.5, 1e-6, 1e-3), 0);
  EXPECT_THROW(iteration_bound(1.0, 1.0, 1e-6), DomainError);
  EXPECT_THROW(iteration_bound(0.5, 0.0, 1e-6), DomainError);
  for (double k : {0.01, 0.2, 0.5, 0.9})
    for (double spread : {1.0, 0.37, 1e3}) {
      const int n = iteration_bound(k, spread, 1e-9);
      EXPECT_LE(std::pow(k, n) * spread, 1e-9 * (1 + 1e-9));
      if (n > 0) {
        EXPECT_GT(std::pow(k, n - 1) * spread, 1e-9);
      }
    }
}

TEST(Polynomials, CardanAndFerrari) {
  auto r = real_roots(solve_cubic_cardan(-7, 6));
  std::sort(r.begin(), r.end());
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], -3, 1e-12);
  EXPECT_NEAR(r[1], 1, 1e-12);
  EXPECT_NEAR(r[2], 2, 1e-12);
  // (x-1)(x+2)(x-3)(x+4) = x^4 + 2x^3 - 13x^2 - 14x + 24
  auto q = real_roots(solve_quartic({2, -13, -14, 24}));
  std::sort(q.begin(), q.end());
  ASSERT_EQ(q.size(), 4u);
  const double want[] = {-4, -2, 1, 3};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(q[i], want[i], 1e-12);
  // x^4 + 1 has no real root
  EXPECT_TRUE(real_roots(solve_quartic({0, 0, 0, 1})).empty());
}

TEST(Polynomials, QuarticRandomResiduals) {
  Sampler s(13);
  for (int i = 0; i < 200; ++i) {
    const QuarticCoeffs c{s.uniform(-5, 5), s.uniform(-5, 5), s.uniform(-5, 5), s.uniform(-5, 5)};
    for (const auto& x : solve_quartic(c)) {
      const Complex v = (((x + c.a1) * x + c.a2) * x + c.a3) * x + c.a4;
      EXPECT_LT(std::abs(v), 1e-9 * std::max(1.0, std::pow(std::abs(x), 4)));
    }
  }
}

TEST(Series, PrintedCoefficientsAtUnity) {
  const auto a = series_coefficients(1.0);
  EXPECT_DOUBLE_EQ(a[3], 1.0);
  EXPECT_DOUBLE_EQ(a[4], 1.0);
}
