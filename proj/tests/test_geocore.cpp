#include <gtest/gtest.h>

#include "geodesy/geocore.hpp"
#include "support.hpp"

using namespace geodesy;
using geodesy::test::reference_integral;
using geodesy::test::Sampler;

namespace {

const Ellipsoid kClarke = Ellipsoid::clarke1880();
const Ellipsoid kGrs = Ellipsoid::grs();

}  // namespace

TEST(Radii, PrimeVerticalAndMeridianAtEquatorAndPole) {
  EXPECT_DOUBLE_EQ(prime_vertical_radius(kGrs, Angle()), kGrs.a());
  EXPECT_NEAR(meridian_radius(kGrs, Angle()), kGrs.a() * (1 - kGrs.e2()), 1e-6);
  const Angle pole = Angle::degrees(90);
  EXPECT_NEAR(prime_vertical_radius(kGrs, pole), meridian_radius(kGrs, pole), 1e-6);
}

TEST(Radii, DerivativeOfParallelRadiusIsMinusRhoSinPhi) {
  Sampler s(1);
  for (int i = 0; i < 20; ++i) {
    const double phi = s.uniform(-1.5, 1.5);
    const double h = 1e-5;
    auto P = [&](double x) { return prime_vertical_radius(kClarke, Angle::radians(x)) * std::cos(x); };
    const double fd = (P(phi + h) - P(phi - h)) / (2 * h);
    const double exact = -meridian_radius(kClarke, Angle::radians(phi)) * std::sin(phi);
    EXPECT_NEAR(fd, exact, 1e-8 * std::max(1.0, std::abs(exact))) << "phi = " << phi;
  }
}

TEST(Radii, LineElementOfTheEllipsoid) {
  // ds^2 = rho^2 dphi^2 + N^2 cos^2 dlambda^2, from the Cartesian parameterization
  Sampler s(2);
  auto r = [](double phi, double lam) {
    const double N = prime_vertical_radius(kClarke, Angle::radians(phi));
    return std::array<double, 3>{N * std::cos(phi) * std::cos(lam), N * std::cos(phi) * std::sin(lam),
                                 N * (1 - kClarke.e2()) * std::sin(phi)};
  };
  for (int i = 0; i < 20; ++i) {
    const double phi = s.uniform(-1.4, 1.4), lam = s.uniform(-3, 3), h = 1e-6;
    std::array<double, 3> dp, dl;
    for (int k = 0; k < 3; ++k) {
      dp[k] = (r(phi + h, lam)[k] - r(phi - h, lam)[k]) / (2 * h);
      dl[k] = (r(phi, lam + h)[k] - r(phi, lam - h)[k]) / (2 * h);
    }
    const double E = dp[0] * dp[0] + dp[1] * dp[1] + dp[2] * dp[2];
    const double F = dp[0] * dl[0] + dp[1] * dl[1] + dp[2] * dl[2];
    const double G = dl[0] * dl[0] + dl[1] * dl[1] + dl[2] * dl[2];
    const double rho = meridian_radius(kClarke, Angle::radians(phi));
    const double P = prime_vertical_radius(kClarke, Angle::radians(phi)) * std::cos(phi);
    EXPECT_NEAR(E / (rho * rho), 1.0, 1e-8);
    EXPECT_NEAR(G / (P * P), 1.0, 1e-8);
    EXPECT_NEAR(F / (rho * P), 0.0, 1e-8);
  }
}

TEST(Latitudes, CompositionThroughParametric) {
  Sampler s(3);
  for (int i = 0; i < 100; ++i) {
    const Angle phi = Angle::radians(s.uniform(-1.57, 1.57));
    const Angle beta = latitude_convert(kClarke, LatitudeKind::geodetic, LatitudeKind::parametric, phi);
    const Angle w1 = latitude_convert(kClarke, LatitudeKind::parametric, LatitudeKind::geocentric, beta);
    const Angle w2 = latitude_convert(kClarke, LatitudeKind::geodetic, LatitudeKind::geocentric, phi);
    EXPECT_NEAR(w1.rad(), w2.rad(), 1e-13);
    const Angle back = latitude_convert(kClarke, LatitudeKind::geocentric, LatitudeKind::geodetic, w2);
    EXPECT_NEAR(back.rad(), phi.rad(), 1e-13);
  }
}

TEST(Latitudes, IsometricMatchesIntegralAndInverts) {
  for (double deg : {-70.0, -12.5, 0.0, 36.0, 45.0, 80.0}) {
    const double phi = deg * kPi / 180;
    const double ref = reference_integral(
        [](double t) {
          return meridian_radius(kClarke, Angle::radians(t)) / (prime_vertical_radius(kClarke, Angle::radians(t)) * std::cos(t));
        },
        0.0, phi);
    const double L = isometric_latitude(kClarke, Angle::radians(phi));
    EXPECT_NEAR(L, ref, 1e-12);
    EXPECT_NEAR(isometric_latitude_inverse(kClarke, L).rad(), phi, 1e-14);
  }
  EXPECT_THROW(isometric_latitude(kClarke, Angle::degrees(90)), DomainError);
}

TEST(Wallis, RecursionAgreesWithQuadrature) {
  for (int p : {0, 2, 4, 6, 8})
    for (double w : {0.1, 0.4, 0.7, 1.0, 1.3, kPi / 2}) {
      const double ref = reference_integral([p](double t) { return std::pow(std::sin(t), p); }, 0.0, w);
      EXPECT_NEAR(wallis(p, Angle::radians(w)), ref, 1e-12) << "p = " << p << " w = " << w;
    }
  EXPECT_THROW(wallis(3, Angle::radians(1)), DomainError);
  EXPECT_THROW(wallis(2, Angle::radians(2)), DomainError);
}

class MeridianArcProperty : public ::testing::TestWithParam<const char*> {};

TEST_P(MeridianArcProperty, SeriesWithinOneMillimetreOfQuadrature) {
  const Ellipsoid ell = std::string(GetParam()) == "grs" ? kGrs : kClarke;
  const MeridianArc arc(ell);
  EXPECT_LT(arc.tail_bound(), 1e-3);
  Sampler s(4);
  double prev = -1e300;
  std::vector<double> phis;
  for (int i = 0; i < 100; ++i) phis.push_back(s.uniform(-kPi / 2, kPi / 2));
  std::sort(phis.begin(), phis.end());
  for (double phi : phis) {
    const double ref = reference_integral([&](double t) { return meridian_radius(ell, Angle::radians(t)); }, 0.0, phi);
    const double beta = arc(Angle::radians(phi));
    EXPECT_NEAR(beta, ref, 1e-3);
    EXPECT_GT(beta, prev);
    EXPECT_DOUBLE_EQ(arc(Angle::radians(-phi)), -beta);
    prev = beta;
  }
}

TEST_P(MeridianArcProperty, OrderIsTheSmallestPassingTheTailBound) {
  const Ellipsoid ell = std::string(GetParam()) == "grs" ? kGrs : kClarke;
  const MeridianArc coarse(ell, 1e-3);
  // one order less would leave more than a millimetre on the quarter meridian
  const double Q = reference_integral([&](double t) { return meridian_radius(ell, Angle::radians(t)); }, 0.0, kPi / 2);
  EXPECT_EQ(coarse.order(), 4);
  const MeridianArc loose(ell, 1.0);
  EXPECT_LT(loose.order(), coarse.order());
  EXPECT_NEAR(coarse.quarter(), Q, 1e-3);
}

INSTANTIATE_TEST_SUITE_P(Presets, MeridianArcProperty, ::testing::Values("grs", "clarke1880"));

TEST(MeridianArc, InverseRoundTripAndRange) {
  const MeridianArc arc(kGrs);
  Sampler s(5);
  for (int i = 0; i < 50; ++i) {
    const double phi = s.uniform(-kPi / 2, kPi / 2);
    EXPECT_NEAR(arc.inverse(arc(Angle::radians(phi))).rad(), phi, 1e-12);
  }
  EXPECT_NEAR(arc.inverse(arc.quarter()).rad(), kPi / 2, 1e-12);
  EXPECT_THROW(arc.inverse(arc.quarter() + 1.0), DomainError);
}

TEST(Geodesics, JacobiAndClairaut) {
  EXPECT_NEAR(jacobi_equator_longitude(kClarke, Angle(), Angle::grades(100)).rad(), 2 * kPi - kClarke.e2() * kPi, 1e-15);
  EXPECT_NEAR(torus_clairaut_constant(2, 1, Angle::radians(kPi / 4)), 3 / std::sqrt(2.0), 1e-15);
  // on the equator N cos(phi) = a
  EXPECT_NEAR(clairaut_constant(kClarke, Angle(), Angle::degrees(30)), kClarke.a() / 2, 1e-6);
}
