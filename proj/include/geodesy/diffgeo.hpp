#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "geodesy/error.hpp"
#include "geodesy/quadrature.hpp"

namespace geodesy {

using Vec3 = Eigen::Vector3d;

/// Finite-difference step scales. Higher derivatives divide by larger powers
/// of h, so they use a larger base step.
struct FdSteps {
  double first = 1e-5;
  double second = 1e-4;
  double third = 1e-3;
};

class ParametricCurve {
 public:
  using Fn = std::function<Vec3(double)>;

  explicit ParametricCurve(Fn position, std::optional<Fn> d1 = {}, std::optional<Fn> d2 = {},
                           std::optional<Fn> d3 = {})
      : pos_(std::move(position)), d1_(std::move(d1)), d2_(std::move(d2)), d3_(std::move(d3)) {}

  Vec3 position(double t) const { return pos_(t); }

  /// Derivative of order 1..3; analytic when registered, central differences otherwise.
  Vec3 derivative(int order, double t) const {
    switch (order) {
      case 1: return d1_ ? (*d1_)(t) : fd(1, t);
      case 2: return d2_ ? (*d2_)(t) : fd(2, t);
      case 3: return d3_ ? (*d3_)(t) : fd(3, t);
      default: throw DomainError("curve derivative order must be 1, 2 or 3");
    }
  }

  Vec3 fd(int order, double t) const {
    const double s = std::max(1.0, std::abs(t));
    if (order == 1) {
      const double h = steps_.first * s;
      return (pos_(t + h) - pos_(t - h)) / (2 * h);
    }
    if (order == 2) {
      const double h = steps_.second * s;
      return (pos_(t + h) - 2 * pos_(t) + pos_(t - h)) / (h * h);
    }
    const double h = steps_.third * s;
    return (pos_(t + 2 * h) - 2 * pos_(t + h) + 2 * pos_(t - h) - pos_(t - 2 * h)) / (2 * h * h * h);
  }

  bool has_analytic() const { return d1_ && d2_ && d3_; }
  ParametricCurve numeric() const { return ParametricCurve(pos_); }

 private:
  Fn pos_;
  std::optional<Fn> d1_, d2_, d3_;
  FdSteps steps_;
};

struct FrenetFrame {
  Vec3 T, N, B;
  double kappa = 0;
  double tau = 0;
  double s_prime = 0;  // |r'(t)|
};

inline FrenetFrame frenet(const ParametricCurve& c, double t) {
  const Vec3 r1 = c.derivative(1, t);
  const Vec3 r2 = c.derivative(2, t);
  const Vec3 r3 = c.derivative(3, t);
  FrenetFrame f;
  f.s_prime = r1.norm();
  if (f.s_prime == 0.0) throw SingularError("frenet: singular point (r' = 0)");
  const Vec3 cr = r1.cross(r2);
  const double crn = cr.norm();
  f.kappa = crn / (f.s_prime * f.s_prime * f.s_prime);
  f.T = r1 / f.s_prime;
  if (crn <= 1e-14 * f.s_prime * r2.norm() || crn == 0.0)
    throw SingularError("frenet: zero curvature, normal undefined");
  f.B = cr / crn;
  f.N = f.B.cross(f.T);
  f.tau = cr.dot(r3) / (crn * crn);
  return f;
}

inline double arc_length(const ParametricCurve& c, double t0, double t1) {
  if (t1 < t0) throw DomainError("arc_length: t0 must not exceed t1");
  if (t0 == t1) return 0.0;
  return integrate([&](double t) { return c.derivative(1, t).norm(); }, t0, t1,
                   1e-10 * std::max(1.0, t1 - t0));
}

/// Position and partials of a surface at one parameter point.
struct SurfaceJet {
  Vec3 r, ru, rv, ruu, ruv, rvv;
};

class ParametricSurface {
 public:
  using Fn = std::function<Vec3(double, double)>;
  using JetFn = std::function<SurfaceJet(double, double)>;

  explicit ParametricSurface(Fn position, std::optional<JetFn> analytic = {})
      : pos_(std::move(position)), jet_(std::move(analytic)) {}

  Vec3 position(double u, double v) const { return pos_(u, v); }
  bool has_analytic() const { return jet_.has_value(); }

  SurfaceJet jet(double u, double v) const { return jet_ ? (*jet_)(u, v) : fd_jet(u, v); }

  SurfaceJet fd_jet(double u, double v) const {
    SurfaceJet j;
    j.r = pos_(u, v);
    const double su = std::max(1.0, std::abs(u));
    const double sv = std::max(1.0, std::abs(v));
    const double hu = steps_.first * su, hv = steps_.first * sv;
    j.ru = (pos_(u + hu, v) - pos_(u - hu, v)) / (2 * hu);
    j.rv = (pos_(u, v + hv) - pos_(u, v - hv)) / (2 * hv);
    const double ku = steps_.second * su, kv = steps_.second * sv;
    j.ruu = (pos_(u + ku, v) - 2 * j.r + pos_(u - ku, v)) / (ku * ku);
    j.rvv = (pos_(u, v + kv) - 2 * j.r + pos_(u, v - kv)) / (kv * kv);
    j.ruv = (pos_(u + ku, v + kv) - pos_(u + ku, v - kv) - pos_(u - ku, v + kv) + pos_(u - ku, v - kv)) /
            (4 * ku * kv);
    return j;
  }

  ParametricSurface numeric() const { return ParametricSurface(pos_); }

 private:
  Fn pos_;
  std::optional<JetFn> jet_;
  FdSteps steps_;
};

struct FundamentalForms {
  double E = 0, F = 0, G = 0;
  double L = 0, M = 0, N = 0;
  Vec3 n = Vec3::Zero();
};

/// First and second fundamental forms; n = r_u x r_v normalised.
inline FundamentalForms fundamental_forms(const ParametricSurface& s, double u, double v) {
  const SurfaceJet j = s.jet(u, v);
  FundamentalForms f;
  f.E = j.ru.dot(j.ru);
  f.F = j.ru.dot(j.rv);
  f.G = j.rv.dot(j.rv);
  const double det = f.E * f.G - f.F * f.F;
  if (!(det > 1e-14 * (f.E + f.G) * (f.E + f.G)))
    throw SingularError("fundamental forms: singular parameterization (EG - F^2 = 0)");
  const Vec3 cr = j.ru.cross(j.rv);
  f.n = cr / cr.norm();
  f.L = f.n.dot(j.ruu);
  f.M = f.n.dot(j.ruv);
  f.N = f.n.dot(j.rvv);
  return f;
}

struct Curvatures {
  double k1 = 0, k2 = 0;  // k1 >= k2
  double K = 0, H = 0;
};

/// Principal curvatures from the pencil II - k I, plus K and H from the forms.
inline Curvatures curvatures(const FundamentalForms& f) {
  Eigen::Matrix2d I, II;
  I << f.E, f.F, f.F, f.G;
  II << f.L, f.M, f.M, f.N;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> es(II, I, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SingularError("curvatures: eigen-solve failed");
  Curvatures c;
  c.k1 = es.eigenvalues()(1);
  c.k2 = es.eigenvalues()(0);
  const double det = f.E * f.G - f.F * f.F;
  c.K = (f.L * f.N - f.M * f.M) / det;
  c.H = (f.E * f.N + f.G * f.L - 2 * f.F * f.M) / (2 * det);
  return c;
}

inline Curvatures curvatures(const ParametricSurface& s, double u, double v) {
  return curvatures(fundamental_forms(s, u, v));
}

/// Partial derivatives of a height function z = f(x, y).
struct GraphJet {
  double fx = 0, fy = 0, fxx = 0, fxy = 0, fyy = 0;
};

inline std::pair<double, double> graph_curvatures(const GraphJet& d) {
  const double w2 = 1 + d.fx * d.fx + d.fy * d.fy;
  const double K = (d.fxx * d.fyy - d.fxy * d.fxy) / (w2 * w2);
  const double H = ((1 + d.fy * d.fy) * d.fxx - 2 * d.fx * d.fy * d.fxy + (1 + d.fx * d.fx) * d.fyy) /
                   (2 * w2 * std::sqrt(w2));
  return {K, H};
}

/// Same, with the partials taken by central differences of f.
template <class F>
std::pair<double, double> graph_curvatures(F f, double x, double y) {
  const double h = 1e-4 * std::max(1.0, std::max(std::abs(x), std::abs(y)));
  GraphJet d;
  const double f0 = f(x, y);
  d.fx = (f(x + h, y) - f(x - h, y)) / (2 * h);
  d.fy = (f(x, y + h) - f(x, y - h)) / (2 * h);
  d.fxx = (f(x + h, y) - 2 * f0 + f(x - h, y)) / (h * h);
  d.fyy = (f(x, y + h) - 2 * f0 + f(x, y - h)) / (h * h);
  d.fxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h);
  return graph_curvatures(d);
}

/// The surface z = f(x, y) as a parametric patch (u = x, v = y).
inline ParametricSurface monge_patch(std::function<double(double, double)> f) {
  return ParametricSurface([f](double x, double y) { return Vec3(x, y, f(x, y)); });
}

/// Total curvature of the metric ds^2 = A^2 du^2 + B^2 dv^2:
/// K = -1/(AB) [ (A_v / B)_v + (B_u / A)_u ], by nested central differences.
template <class FA, class FB>
double orthogonal_metric_K(FA A, FB B, double u, double v, double step = 1e-4) {
  const double hu = step * std::max(1.0, std::abs(u));
  const double hv = step * std::max(1.0, std::abs(v));
  auto Av_over_B = [&](double uu, double vv) {
    return (A(uu, vv + hv) - A(uu, vv - hv)) / (2 * hv) / B(uu, vv);
  };
  auto Bu_over_A = [&](double uu, double vv) {
    return (B(uu + hu, vv) - B(uu - hu, vv)) / (2 * hu) / A(uu, vv);
  };
  const double t1 = (Av_over_B(u, v + hv) - Av_over_B(u, v - hv)) / (2 * hv);
  const double t2 = (Bu_over_A(u + hu, v) - Bu_over_A(u - hu, v)) / (2 * hu);
  return -(t1 + t2) / (A(u, v) * B(u, v));
}

}  // namespace geodesy
