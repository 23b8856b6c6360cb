#pragma once

#include <cmath>

#include "geodesy/angle.hpp"
#include "geodesy/error.hpp"

namespace geodesy {

inline constexpr double kGmEarth = 3.986005e14;     // m^3 s^-2
inline constexpr double kAstronomicalUnit = 149597870e3;  // m

struct Orbit {
  double a = 0.0;
  double e = 0.0;
  double mu = kGmEarth;

  double periapsis() const { return a * (1 - e); }
  double apoapsis() const { return a * (1 + e); }
  double semi_minor() const { return a * std::sqrt(1 - e * e); }
};

inline void check_eccentricity(double e) {
  if (!(e >= 0.0 && e < 1.0)) throw DomainError("eccentricity must lie in [0, 1)");
}

/// Solves E - e sin E = M. Newton from E0 = M + e sin M on the reduced
/// anomaly in [-pi, pi], kept inside a bracket; steps that leave the bracket
/// are replaced by bisection.
inline Angle kepler_solve(Angle M, double e) {
  check_eccentricity(e);
  const double turns = std::round(M.rad() / (2 * kPi));
  const double m = M.rad() - turns * 2 * kPi;
  if (e == 0.0 || m == 0.0 || std::abs(m) == kPi) return M;
  const double sg = m < 0 ? -1.0 : 1.0;
  const double ma = std::abs(m);  // solve on (0, pi); f is odd
  double lo = ma, hi = std::min(kPi, ma + e);
  double E = std::min(hi, ma + e * std::sin(ma));
  for (int i = 0; i < 100; ++i) {
    const double f = E - e * std::sin(E) - ma;
    if (f > 0) hi = E; else lo = E;
    const double df = 1 - e * std::cos(E);
    double next = E - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - E) <= 1e-16 * std::max(1.0, E)) {
      E = next;
      break;
    }
    E = next;
  }
  return Angle::radians(sg * E + turns * 2 * kPi);
}

enum class AnomalyKind { true_anomaly, eccentric, mean };

namespace detail {

inline double unwrap_like(double x, double ref) {
  const double turns = std::round((ref - x) / (2 * kPi));
  return x + turns * 2 * kPi;
}

inline double true_from_eccentric(double E, double e) {
  const double v = 2 * std::atan2(std::sqrt(1 + e) * std::sin(E / 2), std::sqrt(1 - e) * std::cos(E / 2));
  return unwrap_like(v, E);
}

inline double eccentric_from_true(double v, double e) {
  const double E = 2 * std::atan2(std::sqrt(1 - e) * std::sin(v / 2), std::sqrt(1 + e) * std::cos(v / 2));
  return unwrap_like(E, v);
}

}  // namespace detail

/// Converts between true, eccentric and mean anomaly, keeping the revolution
/// count of the input.
inline Angle anomaly_convert(AnomalyKind from, AnomalyKind to, Angle x, double e) {
  check_eccentricity(e);
  if (from == to) return x;
  double E = 0.0;
  switch (from) {
    case AnomalyKind::eccentric: E = x.rad(); break;
    case AnomalyKind::true_anomaly: E = detail::eccentric_from_true(x.rad(), e); break;
    case AnomalyKind::mean: E = kepler_solve(x, e).rad(); break;
  }
  switch (to) {
    case AnomalyKind::eccentric: return Angle::radians(E);
    case AnomalyKind::true_anomaly: return Angle::radians(detail::true_from_eccentric(E, e));
    case AnomalyKind::mean: return Angle::radians(E - e * std::sin(E));
  }
  return x;
}

/// Orbit from apoapsis and periapsis altitudes above a body of radius R.
inline Orbit orbit_from_apsides(double h_apo, double h_peri, double R_body, double mu = kGmEarth) {
  if (h_apo < h_peri) throw DomainError("apoapsis altitude below periapsis altitude");
  if (h_peri <= -R_body) throw DomainError("periapsis inside the body centre");
  Orbit o;
  o.a = R_body + (h_apo + h_peri) / 2;
  o.e = (h_apo - h_peri) / (2 * R_body + h_apo + h_peri);
  o.mu = mu;
  return o;
}

/// Orbit from two apsidal distances, in either order.
inline Orbit orbit_from_radii(double r1, double r2, double mu) {
  const double rp = std::min(r1, r2), ra = std::max(r1, r2);
  if (!(rp > 0)) throw DomainError("apsidal distances must be positive");
  return {(ra + rp) / 2, (ra - rp) / (ra + rp), mu};
}

inline double period(const Orbit& o) { return 2 * kPi * std::sqrt(o.a * o.a * o.a / o.mu); }

/// Time elapsed since the last periapsis passage at true anomaly nu.
inline double time_since_perigee(const Orbit& o, Angle nu) {
  const Angle n = nu.normalized_positive();
  double M = anomaly_convert(AnomalyKind::true_anomaly, AnomalyKind::mean, n, o.e).rad();
  if (M < 0) M += 2 * kPi;
  return M * period(o) / (2 * kPi);
}

/// Eccentric anomaly in [0, pi] at radius r, from r = a (1 - e cos E).
inline Angle eccentric_anomaly_at_radius(const Orbit& o, double r) {
  if (o.e == 0.0) throw DomainError("circular orbit: radius does not fix the anomaly");
  const double c = (1 - r / o.a) / o.e;
  if (c > 1 + 1e-12 || c < -1 - 1e-12) throw DomainError("radius outside the apsidal band");
  return Angle::radians(std::acos(std::clamp(c, -1.0, 1.0)));
}

inline double vis_viva(const Orbit& o, double r) {
  const double tol = 1e-9 * o.a;
  if (r < o.periapsis() - tol || r > o.apoapsis() + tol) throw DomainError("radius outside the apsidal band");
  return std::sqrt(o.mu * (2 / r - 1 / o.a));
}

/// v_apo / v_peri.
inline double apsidal_ratio(double e) {
  check_eccentricity(e);
  return (1 - e) / (1 + e);
}

/// Areal constant C = r^2 dnu/dt, with C^2 = (b^2 / a) mu.
inline double areal_constant(const Orbit& o) { return std::sqrt(o.mu * o.a * (1 - o.e * o.e)); }

/// Orbital-plane position (periapsis on +x) at eccentric anomaly E.
struct OrbitalPosition {
  double x = 0, y = 0;
};

inline OrbitalPosition position_at(const Orbit& o, Angle E) {
  return {o.a * (E.cos() - o.e), o.semi_minor() * E.sin()};
}

}  // namespace geodesy
