#include <gtest/gtest.h>

#include "geodesy/catalog.hpp"
#include "geodesy/diffgeo.hpp"
#include "geodesy/geocore.hpp"
#include "support.hpp"

using namespace geodesy;
using geodesy::test::reference_integral;
using geodesy::test::Sampler;

namespace {

void expect_vec_near(const Vec3& got, const Vec3& want, double rel, const std::string& what) {
  const double tol = rel * std::max(1.0, want.norm());
  EXPECT_LT((got - want).norm(), tol) << what << ": got " << got.transpose() << " want " << want.transpose();
}

}  // namespace

TEST(Curves, HelixCurvatureAndTorsion) {
  for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {0.3, 4.0}}) {
    const auto h = catalog::helix(a, b);
    for (double t : {-2.0, 0.0, 0.7, 5.0}) {
      const auto f = frenet(h, t);
      EXPECT_NEAR(f.kappa, a / (a * a + b * b), 1e-12);
      EXPECT_NEAR(f.tau, b / (a * a + b * b), 1e-12);
      EXPECT_NEAR(f.T.dot(f.N), 0, 1e-14);
      EXPECT_NEAR(f.B.dot(f.T.cross(f.N)), 1, 1e-14);
    }
  }
}

TEST(Curves, NumericDerivativesAgreeWithAnalytic) {
  const ParametricCurve curves[] = {catalog::helix(1.5, 0.7), catalog::cubic_quartic_curve(1.2),
                                    catalog::ellipse(3, 2)};
  for (const auto& c : curves)
    for (double t : {-1.1, 0.4, 1.3}) {
      const auto fa = frenet(c, t);
      const auto fn = frenet(c.numeric(), t);
      EXPECT_NEAR(fn.kappa, fa.kappa, 1e-6 * std::max(1.0, fa.kappa));
      EXPECT_NEAR(fn.tau, fa.tau, 1e-5 * std::max(1.0, std::abs(fa.tau)));
    }
}

TEST(Curves, EllipseVertexRadii) {
  const double a = 5, b = 3;
  const auto e = catalog::ellipse(a, b);
  EXPECT_NEAR(1 / frenet(e, 0).kappa, b * b / a, 1e-12);
  EXPECT_NEAR(1 / frenet(e, kPi / 2).kappa, a * a / b, 1e-12);
  EXPECT_NEAR(frenet(e, 0.3).tau, 0, 1e-14);
}

TEST(Curves, ArcLengthAgainstReference) {
  const auto c = catalog::cubic_quartic_curve(1.0);
  const double ref = reference_integral([&](double t) { return c.derivative(1, t).norm(); }, 0.0, 2.0);
  EXPECT_NEAR(arc_length(c, 0, 2), ref, 1e-9);
  // helix: length grows linearly
  EXPECT_NEAR(arc_length(catalog::helix(3, 4), 0, 2), 10, 1e-9);
  EXPECT_THROW(arc_length(c, 1, 0), DomainError);
}

TEST(Curves, SingularPointsThrow) {
  EXPECT_THROW(frenet(catalog::cubic_quartic_curve(1.0), 0.0), SingularError);
  const ParametricCurve line([](double t) { return Vec3(t, 2 * t, 0); });
  EXPECT_THROW(frenet(line, 0.5), SingularError);
}

TEST(Surfaces, FiniteDifferenceJetsMatchAnalytic) {
  Sampler s(21);
  for (const auto& e : catalog::surfaces()) {
    for (int i = 0; i < 20; ++i) {
      const double u = s.uniform(e.u_lo, e.u_hi), v = s.uniform(e.v_lo, e.v_hi);
      const SurfaceJet a = e.surface.jet(u, v);
      const SurfaceJet n = e.surface.fd_jet(u, v);
      expect_vec_near(n.ru, a.ru, 1e-6, e.name + " ru");
      expect_vec_near(n.rv, a.rv, 1e-6, e.name + " rv");
      expect_vec_near(n.ruu, a.ruu, 1e-6, e.name + " ruu");
      expect_vec_near(n.ruv, a.ruv, 1e-6, e.name + " ruv");
      expect_vec_near(n.rvv, a.rvv, 1e-6, e.name + " rvv");
    }
  }
}

TEST(Surfaces, GaussAndMeanFromPrincipalCurvatures) {
  Sampler s(22);
  for (const auto& e : catalog::surfaces()) {
    for (int i = 0; i < 20; ++i) {
      const double u = s.uniform(e.u_lo, e.u_hi), v = s.uniform(e.v_lo, e.v_hi);
      const auto c = curvatures(e.surface, u, v);
      const double scale = std::max(1.0, std::abs(c.k1) + std::abs(c.k2));
      EXPECT_NEAR(c.K, c.k1 * c.k2, 1e-10 * scale * scale) << e.name;
      EXPECT_NEAR(c.H, (c.k1 + c.k2) / 2, 1e-10 * scale) << e.name;
      EXPECT_GE(c.k1, c.k2);
    }
  }
}

TEST(Surfaces, KnownTotalCurvatures) {
  Sampler s(23);
  for (int i = 0; i < 20; ++i) {
    const double u = s.uniform(-1.3, 1.3), v = s.uniform(-3, 3);
    EXPECT_NEAR(curvatures(catalog::sphere(2), u, v).K, 0.25, 1e-12);
    EXPECT_NEAR(std::abs(curvatures(catalog::sphere(2), u, v).H), 0.5, 1e-12);
    EXPECT_NEAR(curvatures(catalog::pseudosphere(), s.uniform(0.3, 1.4), v).K, -1, 1e-10);
    EXPECT_NEAR(curvatures(catalog::pseudosphere_hyperbolic(), s.uniform(0.3, 2.5), v).K, -1, 1e-10);
    const double a = 2, R = 1;
    EXPECT_NEAR(curvatures(catalog::torus(a, R), u, v).K, std::cos(u) / (R * (a + R * std::cos(u))), 1e-12);
  }
}

TEST(Surfaces, EllipsoidCurvatureIsOneOverRhoN) {
  const Ellipsoid ell = Ellipsoid::clarke1880();
  for (double deg : {-60.0, 0.0, 15.0, 45.0, 75.0}) {
    const double u = deg * kPi / 180;
    const auto c = curvatures(catalog::ellipsoid_surface(ell), u, 0.3);
    const double rho = meridian_radius(ell, Angle::radians(u)), N = prime_vertical_radius(ell, Angle::radians(u));
    EXPECT_NEAR(c.K * rho * N, 1, 1e-10);
    // orthogonal metric: A = rho, B = N cos(phi)
    const double K2 = orthogonal_metric_K(
        [&](double uu, double) { return meridian_radius(ell, Angle::radians(uu)); },
        [&](double uu, double) { return prime_vertical_radius(ell, Angle::radians(uu)) * std::cos(uu); }, u, 0.3,
        1e-3);
    EXPECT_NEAR(K2 * rho * N, 1, 1e-5);
  }
}

TEST(Surfaces, EnneperIsMinimal) {
  Sampler s(24);
  const auto en = catalog::enneper();
  for (int i = 0; i < 50; ++i) {
    const double u = s.uniform(-1.5, 1.5), v = s.uniform(-1.5, 1.5);
    const auto f = fundamental_forms(en, u, v);
    const double w = 1 + u * u + v * v;
    EXPECT_NEAR(f.E, w * w, 1e-12 * w * w);
    EXPECT_NEAR(f.F, 0, 1e-12);
    EXPECT_NEAR(curvatures(f).H, 0, 1e-9);
    EXPECT_NEAR(curvatures(f).K, -4 / std::pow(w, 4), 1e-12);
  }
}

TEST(Surfaces, GraphCurvaturesOfSphericalCap) {
  const double R = 3;
  auto cap = [R](double x, double y) { return std::sqrt(R * R - x * x - y * y); };
  for (auto [x, y] : {std::pair{0.0, 0.0}, {0.5, -0.7}, {1.2, 1.0}}) {
    const auto [K, H] = graph_curvatures(cap, x, y);
    EXPECT_NEAR(K, 1 / (R * R), 1e-6);
    EXPECT_NEAR(std::abs(H), 1 / R, 1e-6);
    const auto c = curvatures(monge_patch(cap), x, y);
    EXPECT_NEAR(c.K, K, 1e-6);
  }
  // plane: both vanish
  const auto [K0, H0] = graph_curvatures(GraphJet{0.3, -0.2, 0, 0, 0});
  EXPECT_EQ(K0, 0);
  EXPECT_EQ(H0, 0);
}

TEST(Surfaces, SingularParameterizationThrows) {
  EXPECT_THROW(fundamental_forms(catalog::sphere(1), kPi / 2, 0), SingularError);
}

// Geodesic on the torus, integrated with RK4 in (u, v, u', v'); w^2 v' must stay constant.
TEST(Geodesics, TorusClairautInvariantUnderRk4) {
  const double a = 2, R = 1, az = 0.6;
  using State = std::array<double, 4>;
  auto rhs = [&](const State& y) {
    const double w = a + R * std::cos(y[0]);
    return State{y[2], y[3], -w * std::sin(y[0]) * y[3] * y[3] / R, 2 * R * std::sin(y[0]) * y[2] * y[3] / w};
  };
  State y{0, 0, std::cos(az) / R, std::sin(az) / (a + R)};
  const double c0 = torus_clairaut_constant(a, R, Angle::radians(az));
  const double h = 1e-3;
  double drift = 0;
  for (int i = 0; i < 20000; ++i) {
    const State k1 = rhs(y);
    State t;
    for (int j = 0; j < 4; ++j) t[j] = y[j] + h / 2 * k1[j];
    const State k2 = rhs(t);
    for (int j = 0; j < 4; ++j) t[j] = y[j] + h / 2 * k2[j];
    const State k3 = rhs(t);
    for (int j = 0; j < 4; ++j) t[j] = y[j] + h * k3[j];
    const State k4 = rhs(t);
    for (int j = 0; j < 4; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    const double w = a + R * std::cos(y[0]);
    drift = std::max(drift, std::abs(w * w * y[3] - c0));
  }
  EXPECT_LT(drift, 1e-6);
}
