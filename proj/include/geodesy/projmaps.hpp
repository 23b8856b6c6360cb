#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "geodesy/diffgeo.hpp"
#include "geodesy/geocore.hpp"

namespace geodesy {

struct PlaneCoord {
  double X = 0.0;
  double Y = 0.0;
};

struct LatLon {
  Angle phi;
  Angle lambda;
};

// ---------------------------------------------------------------- Mercator

inline PlaneCoord mercator_forward(double R, Angle phi, Angle lambda) {
  if (std::abs(phi.rad()) >= kPi / 2 - kPoleGuard) throw DomainError("Mercator: pole has no image");
  return {R * lambda.rad(), R * std::log(std::tan(kPi / 4 + phi.rad() / 2))};
}

inline LatLon mercator_inverse(double R, const PlaneCoord& p) {
  return {Angle::radians(std::atan(std::sinh(p.Y / R))), Angle::radians(p.X / R)};
}

/// Linear scale of the spherical Mercator, equal along meridian and parallel.
inline double mercator_scale(Angle phi) { return 1.0 / phi.cos(); }

// ------------------------------------------------------ polar stereographic

inline PlaneCoord polar_stereo_forward(double R, Angle phi, Angle lambda) {
  if (phi.rad() <= -kPi / 2 + kPoleGuard) throw DomainError("polar stereographic: south pole has no image");
  const double r = 2 * R * std::tan(kPi / 4 - phi.rad() / 2);
  return {r * lambda.sin(), -r * lambda.cos()};
}

inline LatLon polar_stereo_inverse(double R, const PlaneCoord& p) {
  const double r = std::hypot(p.X, p.Y);
  const double phi = kPi / 2 - 2 * std::atan(r / (2 * R));
  const double lambda = r == 0.0 ? 0.0 : std::atan2(p.X, -p.Y);
  return {Angle::radians(phi), Angle::radians(lambda)};
}

/// Radius of the image of parallel phi.
inline double polar_stereo_parallel_radius(double R, Angle phi) {
  return 2 * R * std::tan(kPi / 4 - phi.rad() / 2);
}

// ------------------------------------------- stereographic projection from N

/// Plane (u, v) to the unit sphere: (2u, 2v, u^2 + v^2 - 1) / (u^2 + v^2 + 1).
inline Vec3 stereo_to_sphere(double u, double v) {
  const double s = u * u + v * v;
  return Vec3(2 * u, 2 * v, s - 1) / (s + 1);
}

/// Unit sphere minus the north pole to the plane, through N = (0, 0, 1).
/// Uses x / (1 - z) in the southern half and x (1 + z) / (x^2 + y^2) in the
/// northern half, where 1 - z cancels badly.
inline std::pair<double, double> stereo_to_plane(const Vec3& p) {
  const double x = p.x(), y = p.y(), z = p.z();
  if (z <= 0.0) return {x / (1 - z), y / (1 - z)};
  const double q = x * x + y * y;
  if (q == 0.0) throw DomainError("stereographic: the north pole has no image");
  return {x * (1 + z) / q, y * (1 + z) / q};
}

/// Conformal factor of the pulled-back metric: ds^2 = f (du^2 + dv^2).
inline double stereo_metric_factor(double u, double v) {
  const double s = 1 + u * u + v * v;
  return 4.0 / (s * s);
}

// ----------------------------------------------------------- Gauss sphere

struct GaussSphereParams {
  double c = 1.0;
  double b_shift = 0.0;
  double R_sphere = 0.0;
  Angle phi0;
  Angle psi0;
};

/// Conformal sphere fitted at phi0 so that m = 1, m' = 0 and m'' = 0 there.
inline GaussSphereParams gauss_sphere_fit(const Ellipsoid& ell, Angle phi0) {
  if (std::abs(phi0.rad()) >= kPi / 2 - kPoleGuard) throw DomainError("Gauss sphere: phi0 at the pole");
  const double e2 = ell.e2();
  const double s0 = phi0.sin(), c0 = phi0.cos();
  GaussSphereParams g;
  g.phi0 = phi0;
  g.c = std::sqrt(1 + ell.ep2() * c0 * c0 * c0 * c0);
  g.psi0 = Angle::radians(std::atan(phi0.tan() * std::sqrt((1 - e2) / (1 - e2 * s0 * s0))));
  g.R_sphere = ell.a() * std::sqrt(1 - e2) / (1 - e2 * s0 * s0);
  g.b_shift = std::asinh(g.psi0.tan()) - g.c * isometric_latitude(ell, phi0);
  return g;
}

/// Ellipsoid (phi, lambda) to sphere (psi, Lambda).
inline LatLon gauss_sphere_map(const GaussSphereParams& g, const Ellipsoid& ell, Angle phi, Angle lambda) {
  const double Ls = g.c * isometric_latitude(ell, phi) + g.b_shift;
  return {Angle::radians(std::atan(std::sinh(Ls))), lambda * g.c};
}

inline LatLon gauss_sphere_unmap(const GaussSphereParams& g, const Ellipsoid& ell, Angle psi, Angle Lambda) {
  const double L = (std::asinh(psi.tan()) - g.b_shift) / g.c;
  return {isometric_latitude_inverse(ell, L), Lambda / g.c};
}

/// Linear scale of the ellipsoid-to-sphere map: c R cos(psi) / (N cos(phi)).
inline double gauss_sphere_scale(const GaussSphereParams& g, const Ellipsoid& ell, Angle phi) {
  const Angle psi = gauss_sphere_map(g, ell, phi, Angle()).phi;
  return g.c * g.R_sphere * psi.cos() / (prime_vertical_radius(ell, phi) * phi.cos());
}

/// Printed leading term of m - 1 in powers of (phi - phi0).
inline double gauss_sphere_cubic_coefficient(const Ellipsoid& ell, Angle phi0) {
  const double e2 = ell.e2(), s = phi0.sin(), c = phi0.cos();
  const double w = 1 - e2 * s * s;
  return -2 * e2 * (1 - e2) * s * c / (3 * w * w);
}

// --------------------------------------------------------- truncated UTM

struct UtmCoefficients {
  double a1 = 0, a2 = 0, a3 = 0, g = 0;
};

/// Coefficients of the truncated transverse Mercator at latitude phi.
inline UtmCoefficients utm_coefficients(const Ellipsoid& ell, Angle phi) {
  const double N = prime_vertical_radius(ell, phi);
  const double c = phi.cos(), s = phi.sin(), t = phi.tan();
  UtmCoefficients k;
  k.a1 = N * c;
  k.a2 = k.a1 / 2 * s;
  k.a3 = k.a1 * c * c / 6 * (1 - t * t + ell.ep2() * c * c);
  k.g = ell.a() * (1 - ell.e2()) * (1.0051353 * phi.rad() - 0.0025731 * std::sin(2 * phi.rad()));
  return k;
}

/// X = a1 dl + a3 dl^3, Y = g(phi) + a2 dl^2 with dl = lambda - lambda0 in radians.
inline PlaneCoord utm_truncated_forward(const Ellipsoid& ell, Angle lambda0, Angle phi, Angle lambda) {
  const auto k = utm_coefficients(ell, phi);
  const double dl = (lambda - lambda0).rad();
  return {k.a1 * dl + k.a3 * dl * dl * dl, k.g + k.a2 * dl * dl};
}

/// Longitude of the point with abscissa X on the parallel phi (Newton on the cubic).
inline Angle utm_truncated_inverse_on_parallel(const Ellipsoid& ell, Angle lambda0, Angle phi, double X) {
  const auto k = utm_coefficients(ell, phi);
  double dl = X / k.a1;
  for (int i = 0; i < 50; ++i) {
    const double f = k.a1 * dl + k.a3 * dl * dl * dl - X;
    const double step = f / (k.a1 + 3 * k.a3 * dl * dl);
    dl -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return lambda0 + Angle::radians(dl);
}

/// Coefficient of dl^8 in the transverse Mercator northing series.
inline double utm_a8(const Ellipsoid& ell, Angle phi) {
  const double N = prime_vertical_radius(ell, phi);
  const double s = phi.sin(), c = phi.cos(), t2 = phi.tan() * phi.tan();
  const double c7 = c * c * c * c * c * c * c;
  return N * s * c7 / 40320.0 * (1385 - 3111 * t2 + 543 * t2 * t2 - t2 * t2 * t2);
}

/// Convergence of meridians for the transverse projection: tan g = dl sin(phi).
inline Angle meridian_convergence(Angle lambda, Angle lambda0, Angle phi) {
  return Angle::radians(std::atan((lambda - lambda0).rad() * phi.sin()));
}

/// Laplace equation: geodetic azimuth from astronomic azimuth.
inline Angle laplace_azimuth(Angle az_astro, Angle lambda, Angle lambda_astro, Angle phi) {
  return az_astro + Angle::radians((lambda - lambda_astro).rad() * phi.sin());
}

/// Grid bearing from azimuth: G = Az - gamma - Dv.
inline Angle gisement(Angle az, Angle gamma, Angle dv) { return (az - gamma - dv).normalized_positive(); }

inline PlaneCoord plane_traverse(const PlaneCoord& from, Angle G, double D) {
  return {from.X + D * G.sin(), from.Y + D * G.cos()};
}

/// Grid bearing and distance from a to b.
inline std::pair<Angle, double> plane_inverse(const PlaneCoord& a, const PlaneCoord& b) {
  const double dx = b.X - a.X, dy = b.Y - a.Y;
  return {Angle::radians(std::atan2(dx, dy)).normalized_positive(), std::hypot(dx, dy)};
}

// ------------------------------------------------------------ Lambert conic

struct LambertZone {
  std::string name;
  Ellipsoid ell = Ellipsoid::clarke1880();
  Angle phi0;
  Angle lambda0;
  double k0 = 1.0;
  double X0 = 0.0;
  double Y0 = 0.0;
  double band = 1.5 * kPi / 200;  // half-width of the validity band in latitude
};

/// Tangent conformal conic with scale k0 on the standard parallel.
class LambertConic {
 public:
  explicit LambertConic(LambertZone z) : z_(std::move(z)) {
    if (std::abs(z_.phi0.rad()) >= kPi / 2 - kPoleGuard || z_.phi0.rad() == 0.0)
      throw DomainError("Lambert: standard parallel must lie strictly between equator and pole");
    n_ = z_.phi0.sin();
    r0_ = z_.k0 * prime_vertical_radius(z_.ell, z_.phi0) / z_.phi0.tan();
    L0_ = isometric_latitude(z_.ell, z_.phi0);
  }

  const LambertZone& zone() const { return z_; }
  double n() const { return n_; }
  double r0() const { return r0_; }

  bool in_band(Angle phi) const { return std::abs((phi - z_.phi0).rad()) <= z_.band; }

  double radius(Angle phi) const { return r0_ * std::exp(-n_ * (isometric_latitude(z_.ell, phi) - L0_)); }

  PlaneCoord forward(Angle phi, Angle lambda) const {
    const double r = radius(phi);
    const double th = n_ * (lambda - z_.lambda0).rad();
    return {z_.X0 + r * std::sin(th), z_.Y0 + r0_ - r * std::cos(th)};
  }

  LatLon inverse(const PlaneCoord& p) const {
    const double dx = p.X - z_.X0;
    const double dy = r0_ - (p.Y - z_.Y0);
    const double sg = n_ > 0 ? 1.0 : -1.0;
    const double r = sg * std::hypot(dx, dy);
    const double th = std::atan2(sg * dx, sg * dy);
    const double L = L0_ - std::log(r / r0_) / n_;
    return {isometric_latitude_inverse(z_.ell, L), z_.lambda0 + Angle::radians(th / n_)};
  }

  /// Convergence of meridians, gamma = n (lambda - lambda0).
  Angle convergence(Angle lambda) const { return (lambda - z_.lambda0) * n_; }

  /// Linear scale n r / (N cos phi).
  double scale(Angle phi) const {
    return n_ * radius(phi) / (prime_vertical_radius(z_.ell, phi) * phi.cos());
  }

 private:
  LambertZone z_;
  double n_ = 0, r0_ = 0, L0_ = 0;
};

/// Zone registry. CSV rows: name,a,e2,phi0(gr),lambda0(gr),k0,X0,Y0.
class ZoneRegistry {
 public:
  void load_csv(std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> f;
      std::stringstream ss(line);
      for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
      if (f.size() != 8) throw ParseError("zone registry line " + std::to_string(lineno) + ": expected 8 fields");
      if (f[0] == "name") continue;
      LambertZone z;
      z.name = f[0];
      z.ell = Ellipsoid(detail::to_double(f[1]), detail::to_double(f[2]));
      z.phi0 = Angle::grades(detail::to_double(f[3]));
      z.lambda0 = Angle::grades(detail::to_double(f[4]));
      z.k0 = detail::to_double(f[5]);
      z.X0 = detail::to_double(f[6]);
      z.Y0 = detail::to_double(f[7]);
      zones_.insert_or_assign(z.name, z);
    }
  }

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open zone registry '" + path + "'");
    load_csv(in);
  }

  LambertZone get(const std::string& name) const {
    auto it = zones_.find(name);
    if (it == zones_.end()) throw DomainError("unknown Lambert zone '" + name + "'");
    return it->second;
  }

  /// Zone whose standard parallel is closest to phi.
  LambertZone nearest(Angle phi) const {
    if (zones_.empty()) throw DomainError("zone registry is empty");
    const LambertZone* best = nullptr;
    for (const auto& [k, z] : zones_)
      if (!best || std::abs((z.phi0 - phi).rad()) < std::abs((best->phi0 - phi).rad())) best = &z;
    return *best;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [k, z] : zones_) out.push_back(k);
    return out;
  }

 private:
  std::map<std::string, LambertZone> zones_;
};

// ------------------------------------------------------------ conformality

struct ScaleFactors {
  double meridian = 0;  // m1
  double parallel = 0;  // m2
};

/// Numerical scale factors of a map (phi, lambda) -> plane, given the
/// meridian radius M(phi) and parallel radius P(phi) of the source surface.
/// Five-point central differences; the default step keeps truncation below
/// 1e-10 relative up to about 75 degrees of latitude.
template <class Map, class Mer, class Par>
ScaleFactors numeric_scale_factors(Map map, Mer M, Par P, Angle phi, Angle lambda, double h = 2e-4) {
  auto deriv = [&](auto at) {
    const auto p2 = at(2 * h), p1 = at(h), m1 = at(-h), m2 = at(-2 * h);
    const double dx = (-p2.X + 8 * p1.X - 8 * m1.X + m2.X) / (12 * h);
    const double dy = (-p2.Y + 8 * p1.Y - 8 * m1.Y + m2.Y) / (12 * h);
    return std::hypot(dx, dy);
  };
  const double sm = deriv([&](double d) { return map(phi + Angle::radians(d), lambda); });
  const double sp = deriv([&](double d) { return map(phi, lambda + Angle::radians(d)); });
  return {sm / M(phi), sp / P(phi)};
}

}  // namespace geodesy
