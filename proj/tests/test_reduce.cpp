#include <gtest/gtest.h>

#include "geodesy/reduce.hpp"
#include "support.hpp"

using namespace geodesy;
using geodesy::test::Sampler;

TEST(Reduce, FlatLevelLineIsPureArc) {
  const DistanceObservation o{20000, 0, 0, {}, kDefaultEarthRadius};
  const auto r = reduce_rigorous(o);
  EXPECT_DOUBLE_EQ(r.d0, 20000);
  EXPECT_NEAR(r.de, 2 * o.R * std::asin(20000 / (2 * o.R)), 1e-9);
  const auto c = reduce_by_corrections(o);
  EXPECT_NEAR(c.de, 20000 + std::pow(20000, 3) / (24 * o.R * o.R), 1e-12);
  EXPECT_EQ(c.slope, 0);
  EXPECT_EQ(c.level, 0);
}

// Chord stays below the slope distance and the arc lies between them.
// The arc always exceeds the chord (De = 2R asin(D0/2R)), by about D0^3/(24R^2).
TEST(Reduce, ChainOrderingForElevatedStations) {
  Sampler s(51);
  for (int i = 0; i < 500; ++i) {
    DistanceObservation o;
    o.dp = s.uniform(1000, 30000);
    o.hA = s.uniform(100, 3000);
    o.hB = s.uniform(100, 3000);
    if (std::abs(o.hB - o.hA) >= o.dp) continue;
    const auto r = reduce_rigorous(o);
    EXPECT_LT(r.d0, o.dp);
    EXPECT_GE(r.de, r.d0);
    EXPECT_LT(r.de, o.dp);
    EXPECT_NEAR(r.de - r.d0, std::pow(r.d0, 3) / (24 * o.R * o.R), 1e-6);
  }
}

TEST(Reduce, CorrectionsAgreeWithRigorousWithinFiveMillimetres) {
  Sampler s(52);
  for (int i = 0; i < 500; ++i) {
    DistanceObservation o;
    // magnitudes of the worked exercises: 10-25 km spans, a few hundred metres of height difference
    o.dp = s.uniform(10000, 25000);
    o.hA = s.uniform(0, 1500);
    o.hB = o.hA + s.uniform(-400, 400);
    if (o.hB < 0) continue;
    EXPECT_NEAR(reduce_by_corrections(o).de, reduce_rigorous(o).de, 5e-3);
  }
}

TEST(Reduce, SiteAnglePathAgreesWithHeightPath) {
  Sampler s(53);
  for (int i = 0; i < 200; ++i) {
    DistanceObservation o;
    o.dp = s.uniform(2000, 25000);
    o.hA = s.uniform(0, 1500);
    o.site_angle = Angle::radians(s.uniform(-0.05, 0.05));
    const auto sa = reduce_site_angle(o);
    DistanceObservation h = o;
    h.hB = sa.hB;
    h.site_angle.reset();
    const auto r = reduce_rigorous(h);
    EXPECT_NEAR(sa.d0, r.d0, 1e-6);
    EXPECT_NEAR(sa.de, r.de, 1e-6);
  }
  EXPECT_THROW(reduce_site_angle(DistanceObservation{1000, 0, 0, {}, kDefaultEarthRadius}), DomainError);
}

TEST(Reduce, InconsistentObservationRejected) {
  EXPECT_THROW(reduce_rigorous(DistanceObservation{100, 0, 150, {}, kDefaultEarthRadius}), DomainError);
  EXPECT_THROW(reduce_by_corrections(DistanceObservation{100, 0, 100, {}, kDefaultEarthRadius}), DomainError);
}

TEST(Reduce, GridScaleConventions) {
  EXPECT_DOUBLE_EQ(GridScale::cm_per_km(-14).m(), 1 - 14e-5);
  EXPECT_DOUBLE_EQ(GridScale::relative(8e-5).m(), 1 + 8e-5);
  EXPECT_DOUBLE_EQ(GridScale::module(0.999850371).m(), 0.999850371);
  EXPECT_DOUBLE_EQ(to_grid(1234.5, GridScale::module(1)), 1234.5);
}

TEST(Reduce, FullChainInverse) {
  Sampler s(54);
  for (int i = 0; i < 500; ++i) {
    DistanceObservation o;
    o.dp = s.uniform(500, 30000);
    o.hA = s.uniform(0, 2500);
    o.hB = s.uniform(0, 2500);
    if (std::abs(o.hB - o.hA) >= 0.5 * o.dp) continue;
    const GridScale m = GridScale::cm_per_km(s.uniform(-20, 20));
    const double dr = to_grid(reduce_rigorous(o).de, m);
    EXPECT_NEAR(slope_from_grid(dr, m, o.hA, o.hB, o.R), o.dp, 1e-4);
  }
}
