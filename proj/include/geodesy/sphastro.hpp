#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "geodesy/angle.hpp"
#include "geodesy/error.hpp"

namespace geodesy {

/// Spherical triangle on the unit sphere; side a faces angle A, and so on.
/// Unknown elements are left empty.
struct SphericalTriangle {
  std::optional<Angle> A, B, C;
  std::optional<Angle> a, b, c;
};

struct SolvedTriangle {
  Angle A, B, C;
  Angle a, b, c;
  std::string datum;  // which triple was used: "SSS", "SAS", "ASA", "AAA"
};

namespace detail {

inline double safe_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

inline Angle side_from_sas(Angle b, Angle c, Angle A) {
  return Angle::radians(safe_acos(b.cos() * c.cos() + b.sin() * c.sin() * A.cos()));
}

inline Angle angle_from_sss(Angle a, Angle b, Angle c) {
  const double den = b.sin() * c.sin();
  if (den == 0.0) throw SingularError("spherical triangle: degenerate side");
  return Angle::radians(safe_acos((a.cos() - b.cos() * c.cos()) / den));
}

inline Angle angle_from_asa(Angle B, Angle C, Angle a) {
  return Angle::radians(safe_acos(-B.cos() * C.cos() + B.sin() * C.sin() * a.cos()));
}

inline Angle side_from_aaa(Angle A, Angle B, Angle C) {
  const double den = B.sin() * C.sin();
  if (den == 0.0) throw SingularError("spherical triangle: degenerate angle");
  return Angle::radians(safe_acos((A.cos() + B.cos() * C.cos()) / den));
}

}  // namespace detail

/// Completes a spherical triangle from three independent elements:
/// three sides, two sides and the included angle, two angles and the
/// included side, or three angles. Side-side-angle and angle-angle-side
/// data are ambiguous in general and rejected.
inline SolvedTriangle triangle_solve(const SphericalTriangle& t) {
  std::array<std::optional<Angle>, 3> s = {t.a, t.b, t.c};
  std::array<std::optional<Angle>, 3> g = {t.A, t.B, t.C};
  const int ns = (s[0] ? 1 : 0) + (s[1] ? 1 : 0) + (s[2] ? 1 : 0);
  const int ng = (g[0] ? 1 : 0) + (g[1] ? 1 : 0) + (g[2] ? 1 : 0);
  std::array<Angle, 3> S{}, G{};
  std::string datum;

  auto fill_angles_from_sides = [&]() {
    for (int i = 0; i < 3; ++i) G[i] = detail::angle_from_sss(S[i], S[(i + 1) % 3], S[(i + 2) % 3]);
  };
  auto fill_sides_from_angles = [&]() {
    for (int i = 0; i < 3; ++i) S[i] = detail::side_from_aaa(G[i], G[(i + 1) % 3], G[(i + 2) % 3]);
  };

  if (ns == 3) {
    for (int i = 0; i < 3; ++i) S[i] = *s[i];
    fill_angles_from_sides();
    datum = "SSS";
  } else if (ns == 2 && [&] {
               for (int i = 0; i < 3; ++i)
                 if (!s[i] && g[i]) return true;
               return false;
             }()) {
    int i = 0;
    while (s[i] || !g[i]) ++i;  // i: missing side whose opposite angle is known (included angle)
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    S[j] = *s[j];
    S[k] = *s[k];
    S[i] = detail::side_from_sas(S[j], S[k], *g[i]);
    fill_angles_from_sides();
    datum = "SAS";
  } else if (ng >= 2 && ns >= 1 && [&] {
               for (int i = 0; i < 3; ++i)
                 if (s[i] && g[(i + 1) % 3] && g[(i + 2) % 3]) return true;
               return false;
             }()) {
    int i = 0;
    while (!(s[i] && g[(i + 1) % 3] && g[(i + 2) % 3])) ++i;
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    G[j] = *g[j];
    G[k] = *g[k];
    G[i] = detail::angle_from_asa(G[j], G[k], *s[i]);
    fill_sides_from_angles();
    datum = "ASA";
  } else if (ng == 3) {
    for (int i = 0; i < 3; ++i) G[i] = *g[i];
    if (G[0].rad() + G[1].rad() + G[2].rad() <= kPi)
      throw DomainError("spherical triangle: angle sum must exceed pi");
    fill_sides_from_angles();
    datum = "AAA";
  } else if (ns + ng < 3) {
    throw DomainError("spherical triangle: need three elements, " + std::to_string(ns + ng) + " given");
  } else {
    throw DomainError(
        "spherical triangle: ambiguous datum (side-side-angle or angle-angle-side); "
        "supply the included angle or the included side");
  }
  return {G[0], G[1], G[2], S[0], S[1], S[2], datum};
}

/// Largest residual of the cosine rules (sides and polar), the sine rule and
/// the four-parts formula on a solved triangle.
inline double triangle_residual(const SolvedTriangle& t) {
  const std::array<Angle, 3> S = {t.a, t.b, t.c}, G = {t.A, t.B, t.C};
  double r = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    r = std::max(r, std::abs(S[i].cos() - (S[j].cos() * S[k].cos() + S[j].sin() * S[k].sin() * G[i].cos())));
    r = std::max(r, std::abs(G[i].cos() - (-G[j].cos() * G[k].cos() + G[j].sin() * G[k].sin() * S[i].cos())));
    r = std::max(r, std::abs(S[i].sin() * G[j].sin() - S[j].sin() * G[i].sin()));
    // cos b cos C = cot a sin b - cot A sin C, multiplied through by sin a sin A
    r = std::max(r, std::abs(S[j].cos() * G[k].cos() * S[i].sin() * G[i].sin() -
                             (S[i].cos() * S[j].sin() * G[i].sin() - G[i].cos() * G[k].sin() * S[i].sin())));
  }
  return r;
}

/// Spherical excess from three angles.
inline Angle spherical_excess_angles(Angle A, Angle B, Angle C) { return A + B + C - Angle::radians(kPi); }

/// Spherical excess from three sides (arcs), by l'Huilier.
inline Angle spherical_excess_sides(Angle a, Angle b, Angle c) {
  const double s = 0.5 * (a.rad() + b.rad() + c.rad());
  const double t = std::tan(s / 2) * std::tan((s - a.rad()) / 2) * std::tan((s - b.rad()) / 2) *
                   std::tan((s - c.rad()) / 2);
  return Angle::radians(4 * std::atan(std::sqrt(std::max(0.0, t))));
}

/// Spherical excess from two sides (arcs) and the included angle, exact form
/// tan(E/2) = tan(b/2) tan(c/2) sin A / (1 + tan(b/2) tan(c/2) cos A).
inline Angle spherical_excess_sas(Angle b, Angle c, Angle A) {
  const double k = std::tan(b.rad() / 2) * std::tan(c.rad() / 2);
  return Angle::radians(2 * std::atan2(k * A.sin(), 1 + k * A.cos()));
}

/// Small-triangle approximation (1/2) b c sin A / R^2 with sides as lengths.
inline Angle spherical_excess_planar(double b, double c, Angle A, double R) {
  return Angle::radians(0.5 * b * c * A.sin() / (R * R));
}

/// Exact two-sides-and-angle excess with the sides as lengths on a sphere of radius R.
inline Angle spherical_excess_sas(double b, double c, Angle A, double R) {
  return spherical_excess_sas(Angle::radians(b / R), Angle::radians(c / R), A);
}

/// Spherical excess from whatever the triangle carries: three angles, three
/// sides, or two sides with the included angle.
inline Angle spherical_excess(const SphericalTriangle& t) {
  if (t.A && t.B && t.C) return spherical_excess_angles(*t.A, *t.B, *t.C);
  if (t.a && t.b && t.c) return spherical_excess_sides(*t.a, *t.b, *t.c);
  if (t.b && t.c && t.A) return spherical_excess_sas(*t.b, *t.c, *t.A);
  if (t.c && t.a && t.B) return spherical_excess_sas(*t.c, *t.a, *t.B);
  if (t.a && t.b && t.C) return spherical_excess_sas(*t.a, *t.b, *t.C);
  throw DomainError("spherical excess: need three angles, three sides, or two sides and the included angle");
}

/// Angular misclosure of observed angles: sum - pi - excess.
inline Angle closure(Angle A, Angle B, Angle C, Angle excess) {
  return A + B + C - Angle::radians(kPi) - excess;
}

/// Side of the regular spherical quadrilateral whose corner angles are alpha:
/// cos a = cot^2(alpha/2).
inline Angle square_side(Angle alpha) {
  if (!(alpha.rad() > kPi / 2 && alpha.rad() < kPi))
    throw DomainError("no spherical square with this corner angle (need pi/2 < alpha < pi)");
  const double ct = 1.0 / std::tan(alpha.rad() / 2);
  return Angle::radians(std::acos(ct * ct));
}

/// Diagonal of the same square: tan(d/2) = tan a cos(alpha/2).
inline Angle square_diagonal(Angle alpha) {
  const Angle a = square_side(alpha);
  return Angle::radians(2 * std::atan(a.tan() * std::cos(alpha.rad() / 2)));
}

/// Cassini-Soldner spherical coordinates: H is the distance from the central
/// meridian along a great circle, L the latitude of its foot on that meridian.
inline std::pair<Angle, Angle> cassini_soldner_forward(Angle phi, Angle lambda) {
  const double H = std::asin(std::clamp(phi.cos() * lambda.sin(), -1.0, 1.0));
  const double L = std::atan2(phi.sin(), phi.cos() * lambda.cos());
  return {Angle::radians(L), Angle::radians(H)};
}

inline std::pair<Angle, Angle> cassini_soldner_inverse(Angle L, Angle H) {
  if (std::abs(H.cos()) < 1e-15) throw SingularError("Cassini-Soldner inverse: H at the pole of the central meridian");
  const double phi = std::asin(std::clamp(H.cos() * L.sin(), -1.0, 1.0));
  const double lambda = std::atan2(H.sin(), H.cos() * L.cos());
  return {Angle::radians(phi), Angle::radians(lambda)};
}

enum class Circumpolar { never_sets, never_rises };

class CircumpolarError : public DomainError {
 public:
  explicit CircumpolarError(Circumpolar k)
      : DomainError(k == Circumpolar::never_sets ? "star never sets (circumpolar)" : "star never rises"),
        kind(k) {}
  Circumpolar kind;
};

/// Hour angle at setting, cos AH = -tan(phi) tan(delta).
inline Angle hour_angle_of_set(Angle phi, Angle delta) {
  const double x = -phi.tan() * delta.tan();
  if (x < -1.0) throw CircumpolarError(Circumpolar::never_sets);
  if (x > 1.0) throw CircumpolarError(Circumpolar::never_rises);
  return Angle::radians(std::acos(x));
}

inline Angle zenith_distance(Angle phi, Angle delta, Angle ah) {
  const double s = phi.sin() * delta.sin() + phi.cos() * delta.cos() * ah.cos();
  const double y = std::hypot(delta.cos() * ah.sin(), phi.sin() * delta.cos() * ah.cos() - phi.cos() * delta.sin());
  return Angle::radians(std::atan2(y, s));
}

/// Azimuth from North, clockwise (East = pi/2), in [0, 2pi).
inline Angle star_azimuth(Angle phi, Angle delta, Angle ah) {
  const double y = ah.sin() * delta.cos();
  const double x = ah.cos() * phi.sin() * delta.cos() - phi.cos() * delta.sin();
  if (std::hypot(x, y) < 1e-15) throw SingularError("azimuth undefined at the zenith");
  return Angle::radians(std::atan2(y, x) + kPi).normalized_positive();
}

/// Hour angle in [0, pi] at which the star reaches zenith distance z.
inline Angle hour_angle_for_zenith(Angle phi, Angle delta, Angle z) {
  const double den = phi.cos() * delta.cos();
  if (den == 0.0) throw SingularError("hour angle undefined for a polar observer or star");
  const double x = (z.cos() - phi.sin() * delta.sin()) / den;
  if (x < -1.0 - 1e-12 || x > 1.0 + 1e-12) throw DomainError("zenith distance never reached");
  return Angle::radians(detail::safe_acos(x));
}

inline constexpr double kSiderealRate = 1.0027379;

struct SiderealResult {
  double hsl_hours = 0;  // local sidereal time in [0, 24)
  Angle ah;              // hour angle in [0, 2pi)
};

/// Local sidereal time and hour angle: HSL = HSG0 + rate * elapsed + lambda,
/// AH = HSL - alpha. All times in hours; lambda counted positive east.
inline SiderealResult sidereal_chain(double hsg0, double elapsed_tu, double lambda_east, double alpha,
                                     bool naive = false) {
  const double rate = naive ? 1.0 : kSiderealRate;
  double hsl = std::fmod(hsg0 + elapsed_tu * rate + lambda_east, 24.0);
  if (hsl < 0) hsl += 24.0;
  double ah = std::fmod(hsl - alpha, 24.0);
  if (ah < 0) ah += 24.0;
  return {hsl, Angle::hours(ah)};
}

struct Culmination {
  Angle upper, lower;
};

/// Altitudes at upper and lower culmination.
inline Culmination culmination_altitudes(Angle phi, Angle delta) {
  return {Angle::radians(kPi / 2 - std::abs(phi.rad() - delta.rad())),
          Angle::radians(std::abs(phi.rad() + delta.rad()) - kPi / 2)};
}

inline bool never_sets(Angle phi, Angle delta) {
  const double sg = phi.rad() >= 0 ? 1.0 : -1.0;
  return sg * delta.rad() >= kPi / 2 - std::abs(phi.rad());
}

inline bool never_rises(Angle phi, Angle delta) {
  const double sg = phi.rad() >= 0 ? 1.0 : -1.0;
  return sg * delta.rad() <= -(kPi / 2 - std::abs(phi.rad()));
}

inline bool culminates_at_zenith(Angle phi, Angle delta, double tol = 1e-12) {
  return std::abs(phi.rad() - delta.rad()) <= tol;
}

/// Noon shadow of a vertical rod of height `rod`: HC = HA tan|phi - delta|.
inline double shadow_length(double rod, Angle phi, Angle delta) {
  const double dz = std::abs(phi.rad() - delta.rad());
  if (dz >= kPi / 2) throw DomainError("sun not above the horizon at noon: shadow is unbounded");
  return rod * std::tan(dz);
}

}  // namespace geodesy
