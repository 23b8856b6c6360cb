#include <gtest/gtest.h>

#include "geodesy/projmaps.hpp"
#include "support.hpp"

using namespace geodesy;
using geodesy::test::Sampler;

namespace {

const Ellipsoid kClarke = Ellipsoid::clarke1880();
constexpr double kR = 6378000;

auto ell_M(const Ellipsoid& e) {
  return [e](Angle p) { return meridian_radius(e, p); };
}
auto ell_P(const Ellipsoid& e) {
  return [e](Angle p) { return prime_vertical_radius(e, p) * p.cos(); };
}
auto sph_M(double R) {
  return [R](Angle) { return R; };
}
auto sph_P(double R) {
  return [R](Angle p) { return R * p.cos(); };
}

ZoneRegistry zones() {
  ZoneRegistry z;
  z.load_file(std::string(GEODESY_DATA_DIR) + "/lambert_zones.csv");
  return z;
}

}  // namespace

TEST(Conformality, MercatorAndPolarStereographic) {
  Sampler s(41);
  for (int i = 0; i < 50; ++i) {
    const Angle phi = Angle::radians(s.uniform(-1.3, 1.3)), lam = Angle::radians(s.uniform(-3, 3));
    const auto m = numeric_scale_factors([](Angle p, Angle l) { return mercator_forward(kR, p, l); }, sph_M(kR),
                                         sph_P(kR), phi, lam);
    EXPECT_NEAR(m.meridian, m.parallel, 1e-10 * m.parallel);
    EXPECT_NEAR(m.meridian, mercator_scale(phi), 1e-10 * m.meridian);
    const Angle phn = Angle::radians(s.uniform(0.1, 1.5));
    const auto ps = numeric_scale_factors([](Angle p, Angle l) { return polar_stereo_forward(kR, p, l); },
                                          sph_M(kR), sph_P(kR), phn, lam);
    EXPECT_NEAR(ps.meridian, ps.parallel, 1e-10 * ps.parallel);
  }
}

TEST(Conformality, LambertAndGaussSphereOnTheEllipsoid) {
  const LambertConic nord(zones().get("Nord"));
  const auto g = gauss_sphere_fit(kClarke, Angle::grades(40));
  auto gauss_then_mercator = [&](Angle p, Angle l) {
    const LatLon s = gauss_sphere_map(g, kClarke, p, l);
    return mercator_forward(g.R_sphere, s.phi, s.lambda);
  };
  for (double gr : {36.0, 38.5, 40.0, 41.2, 44.0}) {
    const Angle phi = Angle::grades(gr), lam = Angle::grades(1.3);
    const auto m = numeric_scale_factors([&](Angle p, Angle l) { return nord.forward(p, l); }, ell_M(kClarke),
                                         ell_P(kClarke), phi, lam);
    EXPECT_NEAR(m.meridian, m.parallel, 1e-10 * m.parallel);
    EXPECT_NEAR(m.parallel, nord.scale(phi), 1e-10);
    const auto gm = numeric_scale_factors(gauss_then_mercator, ell_M(kClarke), ell_P(kClarke), phi, lam);
    EXPECT_NEAR(gm.meridian, gm.parallel, 1e-10 * gm.parallel);
  }
}

TEST(Conformality, NonConformalControlIsDetected) {
  // plate carree: unit scale on meridians, sec(phi) on parallels
  const auto m = numeric_scale_factors([](Angle p, Angle l) { return PlaneCoord{kR * l.rad(), kR * p.rad()}; },
                                       sph_M(kR), sph_P(kR), Angle::degrees(40), Angle::degrees(10));
  EXPECT_GT(std::abs(m.meridian - m.parallel), 0.1);
}

TEST(Stereographic, PlaneSphereRoundTrip) {
  Sampler s(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = s.uniform(-50, 50), v = s.uniform(-50, 50);
    const Vec3 p = stereo_to_sphere(u, v);
    EXPECT_NEAR(p.norm(), 1, 1e-15);
    const auto [u2, v2] = stereo_to_plane(p);
    EXPECT_LE(std::abs(u2 - u), 1e-14 * std::max(1.0, std::abs(u)));
    EXPECT_LE(std::abs(v2 - v), 1e-14 * std::max(1.0, std::abs(v)));
  }
  EXPECT_THROW(stereo_to_plane(Vec3(0, 0, 1)), DomainError);
}

TEST(Stereographic, MetricFactorMatchesPullback) {
  for (auto [u, v] : {std::pair{0.0, 0.0}, {0.3, -1.2}, {2.0, 1.0}}) {
    const double h = 1e-6;
    const Vec3 du = (stereo_to_sphere(u + h, v) - stereo_to_sphere(u - h, v)) / (2 * h);
    const Vec3 dv = (stereo_to_sphere(u, v + h) - stereo_to_sphere(u, v - h)) / (2 * h);
    EXPECT_NEAR(du.squaredNorm(), stereo_metric_factor(u, v), 1e-8);
    EXPECT_NEAR(dv.squaredNorm(), stereo_metric_factor(u, v), 1e-8);
    EXPECT_NEAR(du.dot(dv), 0, 1e-8);
  }
}

TEST(Projections, InversesRoundTrip) {
  Sampler s(43);
  const LambertConic sud(zones().get("Sud"));
  for (int i = 0; i < 200; ++i) {
    const Angle phi = Angle::radians(s.uniform(-1.3, 1.3)), lam = Angle::radians(s.uniform(-3, 3));
    const LatLon m = mercator_inverse(kR, mercator_forward(kR, phi, lam));
    EXPECT_NEAR(m.phi.rad(), phi.rad(), 1e-13);
    EXPECT_NEAR(m.lambda.rad(), lam.rad(), 1e-13);
    const Angle phn = Angle::radians(s.uniform(-1.3, 1.5));
    const LatLon p = polar_stereo_inverse(kR, polar_stereo_forward(kR, phn, lam));
    EXPECT_NEAR(p.phi.rad(), phn.rad(), 1e-12);
    EXPECT_NEAR(p.lambda.rad(), lam.rad(), 1e-12);
    const Angle phl = Angle::grades(s.uniform(30, 40)), laml = Angle::grades(s.uniform(-5, 8));
    const LatLon l = sud.inverse(sud.forward(phl, laml));
    EXPECT_NEAR(l.phi.rad(), phl.rad(), 1e-12);
    EXPECT_NEAR(l.lambda.rad(), laml.rad(), 1e-12);
  }
  EXPECT_THROW(mercator_forward(kR, Angle::degrees(90), Angle()), DomainError);
  EXPECT_NEAR(std::hypot(polar_stereo_forward(kR, Angle::degrees(60), Angle::degrees(33)).X,
                         polar_stereo_forward(kR, Angle::degrees(60), Angle::degrees(33)).Y),
              polar_stereo_parallel_radius(kR, Angle::degrees(60)), 1e-8);
}

TEST(GaussSphere, ScaleStaysWithinOnePartPerBillionNearFit) {
  const Angle phi0 = Angle::grades(40);
  const auto g = gauss_sphere_fit(kClarke, phi0);
  EXPECT_NEAR(gauss_sphere_scale(g, kClarke, phi0), 1, 1e-14);
  const double three_minutes = 3.0 / 60 * kPi / 180;
  for (int i = -10; i <= 10; ++i) {
    const Angle phi = phi0 + Angle::radians(three_minutes * i / 10);
    EXPECT_LT(std::abs(gauss_sphere_scale(g, kClarke, phi) - 1), 1e-9);
  }
  // the leading term of m - 1 is cubic in (phi - phi0)
  for (double d : {0.002, 0.005}) {
    const double m = gauss_sphere_scale(g, kClarke, phi0 + Angle::radians(d)) - 1;
    EXPECT_NEAR(m / (d * d * d), gauss_sphere_cubic_coefficient(kClarke, phi0),
                0.05 * std::abs(gauss_sphere_cubic_coefficient(kClarke, phi0)));
  }
  const LatLon back = gauss_sphere_unmap(g, kClarke, gauss_sphere_map(g, kClarke, Angle::grades(43), Angle::grades(2)).phi,
                                         gauss_sphere_map(g, kClarke, Angle::grades(43), Angle::grades(2)).lambda);
  EXPECT_NEAR(back.phi.gr(), 43, 1e-12);
  EXPECT_NEAR(back.lambda.gr(), 2, 1e-12);
}

TEST(Utm, EighthOrderTermIsNegligible) {
  const Ellipsoid grs = Ellipsoid::grs();
  const double dl = 3 * kPi / 180;
  for (double deg = 0; deg <= 84; deg += 4)
    for (const Ellipsoid& e : {kClarke, grs})
      EXPECT_LT(std::abs(utm_a8(e, Angle::degrees(deg)) * std::pow(dl, 8)), 1e-4) << deg;
}

TEST(Utm, TruncatedInverseOnParallel) {
  const Angle lambda0 = Angle::degrees(9);
  for (double deg : {-2.5, -0.4, 1.0, 2.9}) {
    const Angle phi = Angle::degrees(36.5), lam = lambda0 + Angle::degrees(deg);
    const PlaneCoord p = utm_truncated_forward(kClarke, lambda0, phi, lam);
    EXPECT_NEAR(utm_truncated_inverse_on_parallel(kClarke, lambda0, phi, p.X).rad(), lam.rad(), 1e-14);
  }
  // on the central meridian Y is the printed arc approximation
  EXPECT_NEAR(utm_truncated_forward(kClarke, lambda0, Angle(), lambda0).Y, 0, 1e-9);
}

TEST(Bearings, LaplaceGisementAndTraverse) {
  const Angle phi = Angle::grades(40);
  EXPECT_NEAR(laplace_azimuth(Angle::grades(50), Angle::grades(10), Angle::grades(10.01), phi).gr(),
              50 - 0.01 * phi.sin(), 1e-12);
  EXPECT_NEAR(gisement(Angle::grades(10), Angle::grades(12), Angle::grades(0.5)).gr(), 397.5, 1e-10);
  Sampler s(44);
  for (int i = 0; i < 50; ++i) {
    const PlaneCoord a{s.uniform(-1e5, 1e5), s.uniform(-1e5, 1e5)};
    const Angle G = Angle::radians(s.uniform(0, 2 * kPi));
    const double D = s.uniform(1, 1e4);
    const auto [G2, D2] = plane_inverse(a, plane_traverse(a, G, D));
    EXPECT_NEAR(G2.rad(), G.rad(), 1e-9);
    EXPECT_NEAR(D2, D, 1e-8);
  }
  EXPECT_NEAR(meridian_convergence(Angle::degrees(12), Angle::degrees(9), Angle::degrees(30)).rad(),
              std::atan(3 * kPi / 180 * 0.5), 1e-15);
}

TEST(Zones, RegistryLookup) {
  const auto z = zones();
  EXPECT_EQ(z.names(), (std::vector<std::string>{"Nord", "Sud"}));
  EXPECT_EQ(z.nearest(Angle::grades(41)).name, "Nord");
  EXPECT_EQ(z.nearest(Angle::grades(36)).name, "Sud");
  EXPECT_THROW(z.get("Centre"), DomainError);
  const LambertConic nord(z.get("Nord"));
  EXPECT_TRUE(nord.in_band(Angle::grades(40)));
  EXPECT_FALSE(nord.in_band(Angle::grades(30)));
  EXPECT_NEAR(nord.scale(nord.zone().phi0), nord.zone().k0, 1e-14);
  std::istringstream bad("Nord,1,2,3\n");
  ZoneRegistry r;
  EXPECT_THROW(r.load_csv(bad), ParseError);
}
