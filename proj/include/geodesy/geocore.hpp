#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "geodesy/angle.hpp"
#include "geodesy/ellipsoid.hpp"
#include "geodesy/error.hpp"

namespace geodesy {

struct GeodeticCoord {
  Angle phi;
  Angle lambda;
  double h = 0.0;
};

struct CartesianCoord {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

enum class LatitudeKind { geodetic, parametric, geocentric };

inline double prime_vertical_radius(const Ellipsoid& ell, Angle phi) {
  const double s = phi.sin();
  return ell.a() / std::sqrt(1.0 - ell.e2() * s * s);
}

inline double meridian_radius(const Ellipsoid& ell, Angle phi) {
  const double s = phi.sin();
  const double w2 = 1.0 - ell.e2() * s * s;
  return ell.a() * (1.0 - ell.e2()) / (w2 * std::sqrt(w2));
}

/// Converts between geodetic, parametric (reduced) and geocentric latitude.
/// Written with atan2 so the poles map onto themselves exactly.
inline Angle latitude_convert(const Ellipsoid& ell, LatitudeKind from, LatitudeKind to, Angle lat) {
  if (from == to) return lat;
  const double k = std::sqrt(1.0 - ell.e2());
  double phi = lat.rad();
  switch (from) {
    case LatitudeKind::geodetic: break;
    case LatitudeKind::parametric: phi = std::atan2(std::sin(phi), k * std::cos(phi)); break;
    case LatitudeKind::geocentric: phi = std::atan2(std::sin(phi), k * k * std::cos(phi)); break;
  }
  switch (to) {
    case LatitudeKind::geodetic: return Angle::radians(phi);
    case LatitudeKind::parametric: return Angle::radians(std::atan2(k * std::sin(phi), std::cos(phi)));
    case LatitudeKind::geocentric:
      return Angle::radians(std::atan2(k * k * std::sin(phi), std::cos(phi)));
  }
  return Angle::radians(phi);
}

inline constexpr double kPoleGuard = 1e-12;

/// Isometric latitude: integral of rho/(N cos phi) from the equator.
inline double isometric_latitude(const Ellipsoid& ell, Angle phi) {
  if (std::abs(phi.rad()) >= kPi / 2 - kPoleGuard)
    throw DomainError("isometric latitude is unbounded at the pole");
  const double e = ell.e();
  const double s = phi.sin();
  return std::asinh(phi.tan()) - e * std::atanh(e * s);
}

/// Inverse of isometric_latitude by Newton, seeded with the spherical solution.
inline Angle isometric_latitude_inverse(const Ellipsoid& ell, double L) {
  if (!std::isfinite(L)) throw DomainError("isometric latitude must be finite");
  double phi = std::atan(std::sinh(L));
  const double e2 = ell.e2();
  for (int i = 0; i < 50; ++i) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    const double f = isometric_latitude(ell, Angle::radians(phi)) - L;
    const double df = (1.0 - e2) / ((1.0 - e2 * s * s) * c);
    const double step = f / df;
    phi -= step;
    phi = std::clamp(phi, -kPi / 2 + 2 * kPoleGuard, kPi / 2 - 2 * kPoleGuard);
    if (std::abs(step) < 1e-15) break;
  }
  return Angle::radians(phi);
}

/// W_p(Omega) = integral of sin^p over [0, Omega] for even p, by the
/// reduction W_p = (p-1)/p W_{p-2} - sin^{p-1} cos / p starting at W_0 = Omega.
inline double wallis(int p, Angle omega) {
  if (p < 0 || p % 2 != 0) throw DomainError("wallis: index must be even and non-negative");
  const double w = omega.rad();
  if (w < -1e-15 || w > kPi / 2 + 1e-15) throw DomainError("wallis: Omega must lie in [0, pi/2]");
  const double s = std::sin(w);
  const double c = std::cos(w);
  double W = w;
  double spow = s;  // sin^{q-1}
  for (int q = 2; q <= p; q += 2) {
    W = (q - 1.0) / q * W - spow * c / q;
    spow *= s * s;
  }
  return W;
}

/// Meridian arc length from the equator, series form.
///
/// rho = a(1-e2) (1 - e2 sin^2)^(-3/2) is expanded binomially; term k
/// integrates to C_k e2^k W_2k. The order is the smallest n whose tail
/// bound a(1-e2) sum_{k>n} C_k e2^k W_2k(pi/2) stays under `tolerance`.
class MeridianArc {
 public:
  explicit MeridianArc(const Ellipsoid& ell, double tolerance = 1e-3) : ell_(ell) {
    const double e2 = ell.e2();
    const double scale = ell.a() * (1.0 - e2);
    std::vector<double> terms;
    double ck = 1.0;
    double ek = 1.0;
    double wq = kPi / 2;  // W_2k(pi/2)
    for (int k = 0; k < 200; ++k) {
      if (k > 0) {
        ck *= (2.0 * k + 1.0) / (2.0 * k);
        ek *= e2;
        wq *= (2.0 * k - 1.0) / (2.0 * k);
      }
      coeffs_.push_back(ck * ek);
      terms.push_back(scale * ck * ek * wq);
      if (ek == 0.0 && k > 0) break;
    }
    std::vector<double> tail(terms.size() + 1, 0.0);
    for (std::size_t k = terms.size(); k-- > 0;) tail[k] = tail[k + 1] + terms[k];
    order_ = 0;
    while (order_ + 1 < static_cast<int>(terms.size()) && tail[order_ + 1] >= tolerance) ++order_;
    tail_bound_ = tail[order_ + 1];
    coeffs_.resize(order_ + 1);
  }

  /// Highest k kept (terms k = 0..order).
  int order() const { return order_; }
  double tail_bound() const { return tail_bound_; }

  double operator()(Angle phi) const {
    const double x = std::abs(phi.rad());
    if (x > kPi / 2 + 1e-15) throw DomainError("meridian arc: |phi| exceeds pi/2");
    const Angle om = Angle::radians(std::min(x, kPi / 2));
    double sum = 0.0;
    for (int k = 0; k <= order_; ++k) sum += coeffs_[k] * wallis(2 * k, om);
    const double beta = ell_.a() * (1.0 - ell_.e2()) * sum;
    return phi.rad() < 0 ? -beta : beta;
  }

  double quarter() const { return (*this)(Angle::radians(kPi / 2)); }

  /// Latitude whose arc equals beta; Newton on beta(phi) with derivative rho.
  Angle inverse(double beta) const {
    const double q = quarter();
    if (!(std::abs(beta) <= q * (1 + 1e-15)))
      throw DomainError("meridian arc inverse: beta outside [-Q, Q]");
    const double target = std::abs(beta);
    double phi = target / q * (kPi / 2);
    for (int i = 0; i < 60; ++i) {
      const Angle p = Angle::radians(phi);
      const double step = (target - (*this)(p)) / meridian_radius(ell_, p);
      phi = std::clamp(phi + step, 0.0, kPi / 2);
      if (std::abs(step) < 1e-15) break;
    }
    return Angle::radians(beta < 0 ? -phi : phi);
  }

  const Ellipsoid& ellipsoid() const { return ell_; }

 private:
  Ellipsoid ell_;
  std::vector<double> coeffs_;
  int order_ = 0;
  double tail_bound_ = 0.0;
};

inline double meridian_arc(const Ellipsoid& ell, Angle phi) { return MeridianArc(ell)(phi); }

inline Angle meridian_arc_inverse(const Ellipsoid& ell, double beta) {
  return MeridianArc(ell).inverse(beta);
}

/// N cos(phi) sin(Az): the geodesic invariant on a surface of revolution.
inline double clairaut_constant(const Ellipsoid& ell, Angle phi, Angle az) {
  return prime_vertical_radius(ell, phi) * phi.cos() * az.sin();
}

/// Torus with tube radius R and centre-circle radius a; geodesic leaving the
/// outer equator with azimuth az_e.
inline double torus_clairaut_constant(double a, double R, Angle az_e) {
  return (a + R) * az_e.sin();
}

/// Longitude where a geodesic leaving the equator at lambda_e with azimuth
/// az_e next crosses the equator going the same way.
inline Angle jacobi_equator_longitude(const Ellipsoid& ell, Angle lambda_e, Angle az_e) {
  return lambda_e + Angle::radians(2 * kPi - ell.e2() * kPi * az_e.sin());
}

}  // namespace geodesy
