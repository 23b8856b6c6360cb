#pragma once

// Built-in curves and surfaces with analytic derivatives.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "geodesy/diffgeo.hpp"
#include "geodesy/ellipsoid.hpp"

namespace geodesy::catalog {

inline ParametricCurve helix(double a, double b) {
  return ParametricCurve([=](double t) { return Vec3(a * std::cos(t), a * std::sin(t), b * t); },
                         [=](double t) { return Vec3(-a * std::sin(t), a * std::cos(t), b); },
                         [=](double t) { return Vec3(-a * std::cos(t), -a * std::sin(t), 0); },
                         [=](double t) { return Vec3(a * std::sin(t), -a * std::cos(t), 0); });
}

/// x = a t^2, y = a t^3, z = (9/16) a t^4.
inline ParametricCurve cubic_quartic_curve(double a) {
  return ParametricCurve(
      [=](double t) { return Vec3(a * t * t, a * t * t * t, 9.0 / 16.0 * a * t * t * t * t); },
      [=](double t) { return Vec3(2 * a * t, 3 * a * t * t, 9.0 / 4.0 * a * t * t * t); },
      [=](double t) { return Vec3(2 * a, 6 * a * t, 27.0 / 4.0 * a * t * t); },
      [=](double t) { return Vec3(0, 6 * a, 27.0 / 2.0 * a * t); });
}

inline ParametricCurve ellipse(double a, double b) {
  return ParametricCurve([=](double t) { return Vec3(a * std::cos(t), b * std::sin(t), 0); },
                         [=](double t) { return Vec3(-a * std::sin(t), b * std::cos(t), 0); },
                         [=](double t) { return Vec3(-a * std::cos(t), -b * std::sin(t), 0); },
                         [=](double t) { return Vec3(a * std::sin(t), -b * std::cos(t), 0); });
}

inline ParametricSurface enneper() {
  return ParametricSurface(
      [](double u, double v) {
        return Vec3(u - u * u * u / 3 + u * v * v, v - v * v * v / 3 + v * u * u, u * u - v * v);
      },
      [](double u, double v) {
        SurfaceJet j;
        j.r = Vec3(u - u * u * u / 3 + u * v * v, v - v * v * v / 3 + v * u * u, u * u - v * v);
        j.ru = Vec3(1 - u * u + v * v, 2 * u * v, 2 * u);
        j.rv = Vec3(2 * u * v, 1 - v * v + u * u, -2 * v);
        j.ruu = Vec3(-2 * u, 2 * v, 2);
        j.ruv = Vec3(2 * v, 2 * u, 0);
        j.rvv = Vec3(2 * u, -2 * v, -2);
        return j;
      });
}

/// X = u^2 + v, Y = u + v^2, Z = uv.
inline ParametricSurface quadratic_patch() {
  return ParametricSurface([](double u, double v) { return Vec3(u * u + v, u + v * v, u * v); },
                           [](double u, double v) {
                             SurfaceJet j;
                             j.r = Vec3(u * u + v, u + v * v, u * v);
                             j.ru = Vec3(2 * u, 1, v);
                             j.rv = Vec3(1, 2 * v, u);
                             j.ruu = Vec3(2, 0, 0);
                             j.ruv = Vec3(0, 0, 1);
                             j.rvv = Vec3(0, 2, 0);
                             return j;
                           });
}

/// Spheroid X = a cos u cos v, Y = a cos u sin v, Z = b sin u.
inline ParametricSurface spheroid(double a, double b) {
  auto pos = [=](double u, double v) {
    return Vec3(a * std::cos(u) * std::cos(v), a * std::cos(u) * std::sin(v), b * std::sin(u));
  };
  return ParametricSurface(pos, [=](double u, double v) {
    const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
    SurfaceJet j;
    j.r = pos(u, v);
    j.ru = Vec3(-a * su * cv, -a * su * sv, b * cu);
    j.rv = Vec3(-a * cu * sv, a * cu * cv, 0);
    j.ruu = Vec3(-a * cu * cv, -a * cu * sv, -b * su);
    j.ruv = Vec3(a * su * sv, -a * su * cv, 0);
    j.rvv = Vec3(-a * cu * cv, -a * cu * sv, 0);
    return j;
  });
}

inline ParametricSurface sphere(double R) { return spheroid(R, R); }

/// X = sin u cos v, Y = sin u sin v, Z = cos u + Log tan(u/2); 0 < u < pi.
inline ParametricSurface pseudosphere() {
  auto pos = [](double u, double v) {
    return Vec3(std::sin(u) * std::cos(v), std::sin(u) * std::sin(v),
                std::cos(u) + std::log(std::tan(u / 2)));
  };
  return ParametricSurface(pos, [pos](double u, double v) {
    const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
    SurfaceJet j;
    j.r = pos(u, v);
    j.ru = Vec3(cu * cv, cu * sv, cu * cu / su);
    j.rv = Vec3(-su * sv, su * cv, 0);
    j.ruu = Vec3(-su * cv, -su * sv, -cu - cu / (su * su));
    j.ruv = Vec3(-cu * sv, cu * cv, 0);
    j.rvv = Vec3(-su * cv, -su * sv, 0);
    return j;
  });
}

/// X = tanh u cos v, Y = tanh u sin v, Z = 1/cosh u + Log tanh(u/2); u > 0.
inline ParametricSurface pseudosphere_hyperbolic() {
  auto pos = [](double u, double v) {
    return Vec3(std::tanh(u) * std::cos(v), std::tanh(u) * std::sin(v),
                1 / std::cosh(u) + std::log(std::tanh(u / 2)));
  };
  return ParametricSurface(pos, [pos](double u, double v) {
    const double th = std::tanh(u), ch = std::cosh(u), sh = std::sinh(u);
    const double se2 = 1 / (ch * ch);
    const double cv = std::cos(v), sv = std::sin(v);
    SurfaceJet j;
    j.r = pos(u, v);
    j.ru = Vec3(se2 * cv, se2 * sv, 1 / (sh * ch * ch));
    j.rv = Vec3(-th * sv, th * cv, 0);
    j.ruu = Vec3(-2 * se2 * th * cv, -2 * se2 * th * sv, -(ch * ch + 2 * sh * sh) / (sh * sh * ch * ch * ch));
    j.ruv = Vec3(-se2 * sv, se2 * cv, 0);
    j.rvv = Vec3(-th * cv, -th * sv, 0);
    return j;
  });
}

/// Torus: centre-circle radius a, tube radius R; u = phi, v = lambda.
inline ParametricSurface torus(double a, double R) {
  auto pos = [=](double u, double v) {
    const double w = a + R * std::cos(u);
    return Vec3(w * std::cos(v), w * std::sin(v), R * std::sin(u));
  };
  return ParametricSurface(pos, [=](double u, double v) {
    const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
    const double w = a + R * cu;
    SurfaceJet j;
    j.r = pos(u, v);
    j.ru = Vec3(-R * su * cv, -R * su * sv, R * cu);
    j.rv = Vec3(-w * sv, w * cv, 0);
    j.ruu = Vec3(-R * cu * cv, -R * cu * sv, -R * su);
    j.ruv = Vec3(R * su * sv, -R * su * cv, 0);
    j.rvv = Vec3(-w * cv, -w * sv, 0);
    return j;
  });
}

/// Ellipsoid of revolution in geodetic coordinates (u = phi, v = lambda).
inline ParametricSurface ellipsoid_surface(const Ellipsoid& ell) {
  const double a = ell.a(), e2 = ell.e2();
  auto pos = [=](double u, double v) {
    const double N = a / std::sqrt(1 - e2 * std::sin(u) * std::sin(u));
    return Vec3(N * std::cos(u) * std::cos(v), N * std::cos(u) * std::sin(v), N * (1 - e2) * std::sin(u));
  };
  return ParametricSurface(pos, [=](double u, double v) {
    const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
    const double w2 = 1 - e2 * su * su;
    const double N = a / std::sqrt(w2);
    const double rho = a * (1 - e2) / (w2 * std::sqrt(w2));
    const double drho = 3 * rho * e2 * su * cu / w2;
    SurfaceJet j;
    j.r = pos(u, v);
    j.ru = Vec3(-rho * su * cv, -rho * su * sv, rho * cu);
    j.rv = Vec3(-N * cu * sv, N * cu * cv, 0);
    j.ruu = drho * Vec3(-su * cv, -su * sv, cu) + rho * Vec3(-cu * cv, -cu * sv, -su);
    j.ruv = Vec3(rho * su * sv, -rho * su * cv, 0);
    j.rvv = Vec3(-N * cu * cv, -N * cu * sv, 0);
    return j;
  });
}

/// Catalog entry with a sample domain, used by the CLI and the property tests.
struct SurfaceEntry {
  std::string name;
  ParametricSurface surface;
  double u_lo, u_hi, v_lo, v_hi;
};

inline std::vector<SurfaceEntry> surfaces() {
  return {
      {"sphere", sphere(2.0), -1.3, 1.3, -3.0, 3.0},
      {"spheroid", spheroid(3.0, 2.0), -1.3, 1.3, -3.0, 3.0},
      {"enneper", enneper(), -1.5, 1.5, -1.5, 1.5},
      {"quadratic", quadratic_patch(), 0.2, 2.0, 0.2, 2.0},
      {"pseudosphere", pseudosphere(), 0.3, 1.4, -3.0, 3.0},
      {"pseudosphere-th", pseudosphere_hyperbolic(), 0.3, 2.5, -3.0, 3.0},
      {"torus", torus(2.0, 1.0), -3.0, 3.0, -3.0, 3.0},
      {"ellipsoid", ellipsoid_surface(Ellipsoid::clarke1880()), -1.3, 1.3, -3.0, 3.0},
  };
}

inline SurfaceEntry surface_by_name(const std::string& name) {
  for (auto& e : surfaces())
    if (e.name == name) return e;
  throw DomainError("unknown catalog surface '" + name + "'");
}

}  // namespace geodesy::catalog
