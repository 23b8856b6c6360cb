#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "geodesy/angle.hpp"
#include "geodesy/error.hpp"

namespace geodesy {

inline constexpr double kDefaultEarthRadius = 6378000.0;

struct DistanceObservation {
  double dp = 0.0;  // slope distance, m
  double hA = 0.0;
  double hB = 0.0;
  std::optional<Angle> site_angle;  // elevation angle of B seen from A
  double R = kDefaultEarthRadius;
};

struct RigorousReduction {
  double d0 = 0.0;  // chord on the reference sphere
  double de = 0.0;  // arc on the reference sphere
};

inline RigorousReduction reduce_rigorous(const DistanceObservation& o) {
  const double dh = o.hB - o.hA;
  const double num = o.dp * o.dp - dh * dh;
  const double den = (1 + o.hA / o.R) * (1 + o.hB / o.R);
  if (!(num > 0.0) || !(den > 0.0)) throw DomainError("inconsistent observation: |hB - hA| >= slope distance");
  RigorousReduction r;
  r.d0 = std::sqrt(num / den);
  if (r.d0 > 2 * o.R) throw DomainError("inconsistent observation: chord longer than the sphere diameter");
  r.de = 2 * o.R * std::asin(r.d0 / (2 * o.R));
  return r;
}

struct CorrectionBreakdown {
  double slope = 0.0;  // -dH^2 / (2 Dp)
  double level = 0.0;  // -Dp Hm / R
  double arc = 0.0;    // +Dp^3 / (24 R^2)
  double de = 0.0;
};

/// Classical correction sequence; agrees with reduce_rigorous to a few mm on
/// spans of tens of kilometres.
inline CorrectionBreakdown reduce_by_corrections(const DistanceObservation& o) {
  const double dh = o.hB - o.hA;
  if (!(o.dp > std::abs(dh))) throw DomainError("inconsistent observation: |hB - hA| >= slope distance");
  CorrectionBreakdown c;
  c.slope = -dh * dh / (2 * o.dp);
  c.level = -o.dp * 0.5 * (o.hA + o.hB) / o.R;
  c.arc = o.dp * o.dp * o.dp / (24 * o.R * o.R);
  c.de = o.dp + c.slope + c.level + c.arc;
  return c;
}

/// Rigorous reduction when the datum is the site angle i at A instead of hB:
/// the triangle (centre, A, B) gives OB^2 = (R+hA)^2 + Dp^2 + 2 (R+hA) Dp sin i.
struct SiteAngleReduction {
  double hB = 0.0;  // altitude of B implied by the site angle
  double d0 = 0.0;
  double de = 0.0;
};

inline SiteAngleReduction reduce_site_angle(const DistanceObservation& o) {
  if (!o.site_angle) throw DomainError("site-angle reduction needs a site angle");
  const double ra = o.R + o.hA;
  const double ob = std::sqrt(ra * ra + o.dp * o.dp + 2 * ra * o.dp * o.site_angle->sin());
  // sin of half the central angle, from AB^2 = (OB - OA)^2 + 4 OA OB sin^2(theta/2)
  const double s = std::sqrt(std::max(0.0, (o.dp * o.dp - (ob - ra) * (ob - ra)) / (4 * ra * ob)));
  SiteAngleReduction r;
  r.hB = ob - o.R;
  r.d0 = 2 * o.R * s;
  r.de = 2 * o.R * std::asin(s);
  return r;
}

/// Linear scale of a projection, as a module or as an alteration.
class GridScale {
 public:
  static GridScale module(double m) { return GridScale(m); }
  /// Alteration in cm/km: m = 1 + value * 1e-5.
  static GridScale cm_per_km(double v) { return GridScale(1.0 + v * 1e-5); }
  /// Relative alteration: m = 1 + value.
  static GridScale relative(double v) { return GridScale(1.0 + v); }
  double m() const { return m_; }

 private:
  explicit GridScale(double m) : m_(m) {}
  double m_;
};

inline double to_grid(double de, GridScale s) { return s.m() * de; }
inline double from_grid(double dr, GridScale s) { return dr / s.m(); }

/// Closed-form inverse of the rigorous chain: grid distance back to slope distance.
inline double slope_from_grid(double dr, GridScale s, double hA, double hB, double R = kDefaultEarthRadius) {
  const double de = from_grid(dr, s);
  const double d0 = 2 * R * std::sin(de / (2 * R));
  const double dh = hB - hA;
  return std::sqrt(d0 * d0 * (1 + hA / R) * (1 + hB / R) + dh * dh);
}

}  // namespace geodesy
