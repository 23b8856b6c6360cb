#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "geodesy/geocore.hpp"
#include "geodesy/polynomial.hpp"

namespace geodesy {

enum class IterMethod { Iter1, Iter2, Iter3 };

struct IterationReport {
  IterMethod method = IterMethod::Iter1;
  int iterations = 0;
  int bound_used = -1;  // -1 when no contraction estimate was available
  double final_delta = 0.0;
  double k_estimate = 0.0;
};

struct IterativeResult {
  GeodeticCoord geo;
  IterationReport report;
};

inline CartesianCoord geodetic_to_cart(const Ellipsoid& ell, const GeodeticCoord& g) {
  const double N = prime_vertical_radius(ell, g.phi);
  const double cp = g.phi.cos();
  return {(N + g.h) * cp * g.lambda.cos(), (N + g.h) * cp * g.lambda.sin(),
          (N * (1.0 - ell.e2()) + g.h) * g.phi.sin()};
}

inline Angle longitude_of(const CartesianCoord& c) {
  if (c.x == 0.0 && c.y == 0.0) throw DomainError("longitude undefined on the polar axis");
  return Angle::radians(std::atan2(c.y, c.x));
}

/// Smallest i with k^i * spread <= eps for a contraction of ratio k.
/// A relative slack of 1e-9 keeps exact powers (0.1^6 vs 1e-6) on the low side.
inline int iteration_bound(double k, double spread, double eps) {
  if (!(k > 0.0 && k < 1.0)) throw DomainError("iteration bound: k must lie in (0, 1)");
  if (!(spread > 0.0) || !(eps > 0.0)) throw DomainError("iteration bound: spread and eps must be positive");
  if (spread <= eps) return 0;
  const double x = std::log(eps / spread) / std::log(k);
  return static_cast<int>(std::ceil(x - 1e-9 * std::max(1.0, x)));
}

namespace detail {

// Ellipsoidal height along the normal, free of the 1/cos(phi) blow-up.
inline double height_from(const Ellipsoid& ell, double p, double z, double phi) {
  const double s = std::sin(phi);
  return p * std::cos(phi) + z * s - ell.a() * std::sqrt(1.0 - ell.e2() * s * s);
}

inline bool on_polar_axis(const Ellipsoid& ell, const CartesianCoord& c, GeodeticCoord& out) {
  if (c.x != 0.0 || c.y != 0.0) return false;
  if (c.z == 0.0) throw DomainError("conversion undefined at the ellipsoid centre");
  out.phi = Angle::radians(c.z > 0 ? kPi / 2 : -kPi / 2);
  out.lambda = Angle::radians(0.0);
  out.h = std::abs(c.z) - ell.b();
  return true;
}

struct FixedPoint {
  const Ellipsoid& ell;
  IterMethod method;
  double p, z;
  double operator()(double phi) const {
    const double s = std::sin(phi);
    const double N = ell.a() / std::sqrt(1.0 - ell.e2() * s * s);
    switch (method) {
      case IterMethod::Iter1: return std::atan((z + N * ell.e2() * s) / p);
      case IterMethod::Iter2: return std::atan(z / (p - N * ell.e2() * std::cos(phi)));
      case IterMethod::Iter3: {
        const double r = std::hypot(p, z);
        return std::atan2(z, p) + std::asin(N * ell.e2() * std::sin(2 * phi) / (2 * r));
      }
    }
    return phi;
  }
};

}  // namespace detail

inline std::string method_name(IterMethod m) {
  switch (m) {
    case IterMethod::Iter1: return "iter1";
    case IterMethod::Iter2: return "iter2";
    case IterMethod::Iter3: return "iter3";
  }
  return "?";
}

/// Cartesian to geodetic by one of three fixed-point schemes in phi.
/// Stops once successive iterates differ by less than eps; raises
/// ConvergenceError after five steps without shrinking.
inline IterativeResult cart_to_geodetic_iter(const Ellipsoid& ell, const CartesianCoord& c,
                                             IterMethod method, double eps = 1e-14,
                                             int max_iter = 200) {
  IterativeResult res;
  res.report.method = method;
  if (detail::on_polar_axis(ell, c, res.geo)) return res;
  const double p = std::hypot(c.x, c.y);
  const detail::FixedPoint f{ell, method, p, c.z};

  double phi = std::atan2(c.z, p * (1.0 - ell.e2()));
  double prev_delta = std::numeric_limits<double>::infinity();
  int stalls = 0;
  for (int i = 1; i <= max_iter; ++i) {
    const double next = f(phi);
    const double delta = std::abs(next - phi);
    if (i == 1 && delta > 0.0) {
      // Contraction estimate over the first bracket, by central differences.
      const double lo = std::min(phi, next), hi = std::max(phi, next);
      const double hstep = 1e-6;
      double k = 0.0;
      for (double x : {lo, 0.5 * (lo + hi), hi})
        k = std::max(k, std::abs(f(x + hstep) - f(x - hstep)) / (2 * hstep));
      res.report.k_estimate = k;
      // the computed step carries a few ulp of rounding; aim the bound below eps by that much
      const double slack = 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(next));
      if (k > 0.0 && k < 1.0) res.report.bound_used = iteration_bound(k, delta, std::max(eps - slack, 0.5 * eps)) + 1;
    }
    phi = next;
    res.report.iterations = i;
    res.report.final_delta = delta;
    if (delta < eps || delta == 0.0) break;
    stalls = delta >= prev_delta ? stalls + 1 : 0;
    if (stalls >= 5) throw ConvergenceError(method_name(method) + ": iteration is not contracting");
    prev_delta = delta;
    if (i == max_iter) throw ConvergenceError(method_name(method) + ": iteration cap reached");
  }
  res.geo.phi = Angle::radians(phi);
  res.geo.lambda = longitude_of(c);
  res.geo.h = detail::height_from(ell, p, c.z, phi);
  return res;
}

/// Coefficients of the foot-point equation in x = R0/a, where (R0, Z0) is
/// the foot of the normal through the point in its meridian plane.
inline QuarticCoeffs foot_point_quartic(const Ellipsoid& ell, double p, double z) {
  const double e2 = ell.e2();
  const double rh = p / ell.a();
  const double zh = z / ell.a();
  const double e4 = e2 * e2;
  return {-2.0 * rh / e2, (rh * rh + (1.0 - e2) * zh * zh) / e4 - 1.0, 2.0 * rh / e2, -rh * rh / e4};
}

/// Cartesian to geodetic by solving the foot-point quartic in closed form.
inline GeodeticCoord cart_to_geodetic_finite(const Ellipsoid& ell, const CartesianCoord& c) {
  GeodeticCoord g;
  if (detail::on_polar_axis(ell, c, g)) return g;
  const double p = std::hypot(c.x, c.y);
  g.lambda = longitude_of(c);
  const double e2 = ell.e2();
  if (e2 == 0.0) {
    g.phi = Angle::radians(std::atan2(c.z, p));
    g.h = std::hypot(p, c.z) - ell.a();
    return g;
  }
  const double a = ell.a();
  const double rh = p / a;
  const double zh = c.z / a;
  const auto roots = solve_quartic(foot_point_quartic(ell, p, c.z));

  // Same roots, but without the 1/e^4 scaling; better for polishing.
  auto g_of = [&](double x) {
    const double t = rh - e2 * x;
    return (x * x - 1.0) * t * t + (1.0 - e2) * zh * zh * x * x;
  };
  auto dg_of = [&](double x) {
    const double t = rh - e2 * x;
    return 2.0 * x * t * t - 2.0 * e2 * (x * x - 1.0) * t + 2.0 * (1.0 - e2) * zh * zh * x;
  };

  double best_x = -1.0;
  double best_d = std::numeric_limits<double>::infinity();
  for (const Complex& r : roots) {
    if (std::abs(r.imag()) > 1e-6 * std::max(1.0, std::abs(r.real()))) continue;
    double x = r.real();
    for (int i = 0; i < 3; ++i) {
      const double d = dg_of(x);
      if (d == 0.0) break;
      const double nx = x - g_of(x) / d;
      if (std::abs(g_of(nx)) > std::abs(g_of(x))) break;
      x = nx;
    }
    if (!(x > 0.0 && x <= 1.0 + 1e-12)) continue;
    x = std::min(x, 1.0);
    if (!(rh - e2 * x > 0.0)) continue;
    const double r0 = a * x;
    const double z0 = c.z * r0 * (1.0 - e2) / (p - e2 * r0);
    const double dist = std::hypot(p - r0, c.z - z0);
    if (dist < best_d) {
      best_d = dist;
      best_x = x;
    }
  }
  if (best_x < 0.0) throw SingularError("finite method: no admissible foot point (point too deep inside)");

  const double r0 = a * best_x;
  const double z0 = c.z * r0 * (1.0 - e2) / (p - e2 * r0);
  const double phi = std::atan2(c.z, p - e2 * r0);
  g.phi = Angle::radians(phi);
  g.h = (p - r0) * std::cos(phi) + (c.z - z0) * std::sin(phi);
  return g;
}

/// Series coefficients a_0..a_4 of x = sum a_i t^i as functions of c.
inline std::array<double, 5> series_coefficients(double c) {
  return {1.0, 1.0, c, (5.0 * c * c - 3.0 * c) / 2.0, 2.0 * c - 9.0 * c * c + 8.0 * c * c * c};
}

/// Cartesian to geodetic by the truncated expansion of x = (R/Z) tan(phi)
/// in t = e^2 a / sqrt(R^2 + nu^2), nu^2 = (1-e^2) Z^2.
inline GeodeticCoord cart_to_geodetic_series(const Ellipsoid& ell, const CartesianCoord& c,
                                             int order = 4) {
  if (order < 0 || order > 4) throw DomainError("series order must be in 0..4");
  GeodeticCoord g;
  if (detail::on_polar_axis(ell, c, g)) return g;
  const double p = std::hypot(c.x, c.y);
  g.lambda = longitude_of(c);
  double phi = 0.0;
  if (c.z != 0.0) {
    const double nu2 = (1.0 - ell.e2()) * c.z * c.z;
    const double cc = p * p / (p * p + nu2);
    const double t = ell.e2() * ell.a() / std::sqrt(p * p + nu2);
    const auto co = series_coefficients(cc);
    double x = 0.0;
    for (int i = order; i >= 0; --i) x = x * t + co[i];
    phi = std::atan2(x * c.z, p);
  }
  g.phi = Angle::radians(phi);
  g.h = detail::height_from(ell, p, c.z, phi);
  return g;
}

}  // namespace geodesy
