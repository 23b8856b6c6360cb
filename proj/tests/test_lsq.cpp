#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "geodesy/lsq.hpp"
#include "support.hpp"

using namespace geodesy;
using geodesy::test::Sampler;
using Eigen::MatrixXd;
using Eigen::VectorXd;
namespace fx = geodesy::fixtures::data;

namespace {

LinearModel random_model(Sampler& s, int n, int u, bool full_weights) {
  LinearModel m{MatrixXd(n, u), VectorXd(n), MatrixXd::Identity(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < u; ++j) m.A(i, j) = s.uniform(-3, 3);
    m.L(i) = s.uniform(-10, 10);
  }
  if (full_weights) {
    MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = s.uniform(-1, 1);
    m.P = G * G.transpose() + n * MatrixXd::Identity(n, n);
  } else {
    for (int i = 0; i < n; ++i) m.P(i, i) = s.uniform(0.1, 5);
  }
  return m;
}

// A^T P V relative to the size of its terms.
double orthogonality(const LinearModel& m, const AdjustmentResult& r) {
  const VectorXd g = m.A.transpose() * m.P * r.V;
  const double scale = (m.A.cwiseAbs().transpose() * m.P.cwiseAbs() * m.L.cwiseAbs()).maxCoeff();
  return g.cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
}

}  // namespace

TEST(Wls, ResidualsOrthogonalAndCovarianceConsistent) {
  Sampler s(71);
  for (int k = 0; k < 100; ++k) {
    const int u = 1 + k % 5, n = u + 1 + k % 7;
    const auto m = random_model(s, n, u, k % 2 == 0);
    const auto r = solve_wls(m);
    EXPECT_LT(orthogonality(m, r), 1e-9);
    EXPECT_TRUE((r.N * r.Qxx).isApprox(MatrixXd::Identity(u, u), 1e-10));
    EXPECT_TRUE(r.cov.isApprox(r.s2 * r.Qxx));
    EXPECT_GE(r.cov.diagonal().minCoeff(), 0);
    EXPECT_EQ(r.dof, n - u);
    EXPECT_NEAR(r.s2, r.V.dot(m.P * r.V) / (n - u), 1e-12 * std::max(1.0, r.s2));
  }
}

TEST(Wls, FixtureModelsAreOrthogonal) {
  const auto p5 = fx::p5_printed();
  EXPECT_LT(orthogonality(p5, solve_wls(p5)), 1e-9);
  const auto t = adjust_triangle(fx::triangle_ex5());
  EXPECT_LT(t.fit.X.norm(), 1e-9);
}

TEST(Wls, WeightScalingInvariance) {
  Sampler s(72);
  for (int k = 0; k < 50; ++k) {
    auto m = random_model(s, 8, 3, k % 2 == 1);
    const auto r1 = solve_wls(m);
    const double c = s.uniform(0.01, 100);
    m.P *= c;
    const auto r2 = solve_wls(m);
    EXPECT_LT((r1.X - r2.X).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, r1.X.cwiseAbs().maxCoeff()));
    EXPECT_NEAR(r2.s2 / c, r1.s2, 1e-12 * r1.s2);
    EXPECT_TRUE(r1.cov.isApprox(r2.cov, 1e-10));
  }
}

TEST(Wls, RankDeficiencyAndShapeErrors) {
  LinearModel m{MatrixXd(4, 2), VectorXd::Ones(4), MatrixXd::Identity(4, 4)};
  m.A << 1, 2, 2, 4, 3, 6, 4, 8;
  EXPECT_THROW(solve_wls(m), SingularError);
  LinearModel few{MatrixXd::Ones(1, 2), VectorXd::Ones(1), MatrixXd::Identity(1, 1)};
  EXPECT_THROW(solve_wls(few), DomainError);
}

TEST(Condition, ClosureOfThreeAngles) {
  MatrixXd B(1, 3);
  B << 1, 1, 1;
  VectorXd w(1);
  w << 0.003;
  const auto c = condition_adjust(B, w, MatrixXd::Identity(3, 3));
  EXPECT_NEAR(c.V.sum(), -0.003, 1e-15);
  EXPECT_NEAR(c.V(0), -0.001, 1e-15);
  EXPECT_TRUE((c.Qll + c.Qvv).isApprox(MatrixXd::Identity(3, 3)));
}

TEST(Directions, ConditionAndParametricMethodsAgree) {
  const auto cond = adjust_directions(fx::quadrilateral(), Angle::dmgr(6.2));
  const auto par = adjust_directions_parametric(fx::quadrilateral(), Angle::dmgr(6.2));
  ASSERT_EQ(cond.residuals.size(), par.residuals.size());
  EXPECT_LT((cond.residuals - par.residuals).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(cond.s2, par.s2, 1e-14);
  EXPECT_EQ(cond.dof, par.dof);
  EXPECT_NEAR(cond.angle_weight("B", "C", "A"), par.angle_weight("B", "C", "A"), 1e-8);
  // adjusted triangle ABC closes to pi
  const double sum = cond.angle("A", "B", "C").rad() + cond.angle("B", "C", "A").rad() + cond.angle("C", "A", "B").rad();
  EXPECT_NEAR(std::fmod(sum, 2 * kPi), kPi, 1e-12);
}

TEST(Leveling, LoopMisclosureDistributedByDistance) {
  // triangle loop with misclosure 6 mm
  const std::vector<LevelingObs> obs{{"A", "B", 1.000, 1}, {"B", "C", 2.000, 2}, {"C", "A", -2.994, 3}};
  const auto r = adjust_leveling(obs, {{"A", 100.0}});
  EXPECT_NEAR(r.heights.at("B"), 101.000 - 0.001, 1e-12);
  EXPECT_NEAR(r.heights.at("C"), 103.000 - 0.003, 1e-12);
  EXPECT_EQ(r.sigma.at("A"), 0);
  EXPECT_THROW(adjust_leveling(obs, {}), DomainError);
  const std::vector<LevelingObs> split{{"A", "B", 1, 1}, {"C", "D", 1, 1}};
  EXPECT_THROW(adjust_leveling(split, {{"A", 0.0}}), DomainError);
  std::istringstream in("from,to,dh,dist\nA,B,1.5,2\n# comment\nB,C,-0.5\n");
  const auto rows = load_leveling(in);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].dist, 1.0);
}

TEST(Triangle, AdjustedTriangleIsConsistent) {
  const auto r = adjust_triangle(fx::triangle_ex5());
  EXPECT_NEAR(r.A.rad() + r.B.rad() + r.C.rad(), kPi, 1e-12);
  EXPECT_NEAR(r.a / r.A.sin(), r.b / r.B.sin(), 1e-9);
  EXPECT_NEAR(r.a / r.A.sin(), r.c / r.C.sin(), 1e-9);
  EXPECT_EQ(r.weights.size(), 6);
  EXPECT_GT(r.weights.minCoeff(), 0);
}

TEST(Jacobians, TriangleAngleGradientMatchesFiniteDifferences) {
  Sampler s(73);
  for (int k = 0; k < 50; ++k) {
    const double a = s.uniform(300, 600), b = s.uniform(300, 600), c = s.uniform(300, 600);
    const Eigen::Vector3d g = detail::angle_gradient(a, b, c);
    const double h = 1e-5 * a;
    const Eigen::Vector3d fd((detail::triangle_angles(a + h, b, c)(0) - detail::triangle_angles(a - h, b, c)(0)) / (2 * h),
                             (detail::triangle_angles(a, b + h, c)(0) - detail::triangle_angles(a, b - h, c)(0)) / (2 * h),
                             (detail::triangle_angles(a, b, c + h)(0) - detail::triangle_angles(a, b, c - h)(0)) / (2 * h));
    EXPECT_LT((fd - g).norm(), 1e-6 * g.norm());
  }
}

TEST(Jacobians, TrilaterationJacobianAndMatrixB) {
  const std::vector<Eigen::Vector2d> st{{0, 0}, {1000, 0}, {400, 900}, {-300, 600}};
  const auto p = trilateration_problem(st);
  const Eigen::Vector2d truth(350, 280);
  VectorXd L(4);
  for (int i = 0; i < 4; ++i) L(i) = 0.5 * (truth - st[static_cast<size_t>(i)]).squaredNorm() + (i % 2 ? 3.0 : -2.0);
  const MatrixXd P = MatrixXd::Identity(4, 4);
  Sampler s(74);
  for (int k = 0; k < 20; ++k) {
    const VectorXd x = (VectorXd(2) << s.uniform(-500, 1500), s.uniform(-500, 1500)).finished();
    const MatrixXd J = p.jacobian(x);
    const double h = 1e-5 * std::max(1.0, x.norm());
    for (int j = 0; j < 2; ++j) {
      VectorXd e = VectorXd::Zero(2);
      e(j) = h;
      const VectorXd fd = (p.zeta(x + e) - p.zeta(x - e)) / (2 * h);
      EXPECT_LT((fd - J.col(j)).norm(), 1e-6 * J.col(j).norm());
    }
    // B is the Hessian of (1/2)(L - zeta)^T P (L - zeta)
    auto grad = [&](const VectorXd& y) { return VectorXd(-p.jacobian(y).transpose() * P * (L - p.zeta(y))); };
    const MatrixXd B = matrix_B(p, x, L, P);
    for (int j = 0; j < 2; ++j) {
      VectorXd e = VectorXd::Zero(2);
      e(j) = h;
      const VectorXd fd = (grad(x + e) - grad(x - e)) / (2 * h);
      EXPECT_LT((fd - B.col(j)).norm(), 1e-6 * B.norm());
    }
  }
  const auto gn = gauss_newton(p, L, P, (VectorXd(2) << 300, 300).finished());
  const VectorXd g = p.jacobian(gn.x).transpose() * P * (L - p.zeta(gn.x));
  EXPECT_LT(g.norm(), 1e-6);
  EXPECT_TRUE(gram_g(p, gn.x, P).isApprox(p.jacobian(gn.x).transpose() * p.jacobian(gn.x)));
}

TEST(Newton, QuadraticInOneStepAndSingularHessianReported) {
  NewtonProblem q;
  q.f = [](const VectorXd& x) { return (x(0) - 1) * (x(0) - 1) + 2 * (x(1) + 3) * (x(1) + 3); };
  q.grad = [](const VectorXd& x) { return VectorXd((VectorXd(2) << 2 * (x(0) - 1), 4 * (x(1) + 3)).finished()); };
  q.hess = [](const VectorXd&) { return MatrixXd((MatrixXd(2, 2) << 2, 0, 0, 4).finished()); };
  const auto r = newton_minimize(q, VectorXd::Zero(2));
  EXPECT_NEAR(r.x(0), 1, 1e-15);
  EXPECT_NEAR(r.x(1), -3, 1e-15);
  EXPECT_LE(r.iterations, 2);
  // the fixture's Hessian 36 u^2 - 36 vanishes at u = 1
  EXPECT_THROW(newton_minimize(fx::newton_fixture(), (VectorXd(2) << 1.0, 0.0).finished()), SingularError);
}

TEST(BursaWolf, FitOnCommonPointsHasMillimetreResiduals) {
  const auto f = bursa_wolf_fit(fx::bursa_wolf_common());
  EXPECT_LT(f.rms, 5e-3);
  for (const auto& p : fx::bursa_wolf_common()) {
    const auto q = bursa_wolf_apply(f.params, p.s1);
    EXPECT_LT(std::hypot(q.x - p.s2.x, q.y - p.s2.y, q.z - p.s2.z), 0.01) << p.name;
  }
}

TEST(BursaWolf, RecoversSyntheticParameters) {
  const SevenParams truth{12.5, -3.2, 7.7, 4.5, 2e-6, -1.5e-6, 3e-6};
  std::vector<CommonPoint> pts;
  for (const auto& p : fx::bursa_wolf_common()) pts.push_back({p.name, p.s1, bursa_wolf_apply(truth, p.s1)});
  const auto f = bursa_wolf_fit(pts);
  EXPECT_NEAR(f.params.tx, truth.tx, 1e-4);
  EXPECT_NEAR(f.params.ty, truth.ty, 1e-4);
  EXPECT_NEAR(f.params.tz, truth.tz, 1e-4);
  EXPECT_NEAR(f.params.scale_ppm, truth.scale_ppm, 1e-6);
  EXPECT_NEAR(f.params.rx, truth.rx, 1e-11);
  EXPECT_NEAR(f.params.ry, truth.ry, 1e-11);
  EXPECT_NEAR(f.params.rz, truth.rz, 1e-11);
  EXPECT_LT(f.rms, 1e-8);
}

TEST(BursaWolf, IdenticalTablesAndDegenerateGeometry) {
  std::vector<CommonPoint> same;
  for (const auto& p : fx::bursa_wolf_common()) same.push_back({p.name, p.s1, p.s1});
  const auto f = bursa_wolf_fit(same);
  EXPECT_NEAR(f.params.tx, 0, 1e-9);
  EXPECT_NEAR(f.params.scale_ppm, 0, 1e-9);
  EXPECT_NEAR(f.rms, 0, 1e-12);
  std::vector<CommonPoint> line;
  for (int i = 0; i < 4; ++i) {
    const CartesianCoord c{4e6 + 1000.0 * i, 1e6 + 500.0 * i, 4.5e6 + 200.0 * i};
    line.push_back({std::to_string(i), c, c});
  }
  EXPECT_THROW(bursa_wolf_fit(line), SingularError);
  std::istringstream bad("name,x1,y1,z1,x2,y2,z2\n1,2,3\n");
  EXPECT_THROW(load_common_points(bad), ParseError);
}
