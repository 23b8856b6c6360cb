#pragma once

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <system_error>

#include "geodesy/error.hpp"

namespace geodesy {

inline constexpr double kPi = std::numbers::pi;

enum class AngleUnit { rad, deg, gr, dmgr, hours };

/// Radians per one unit.
constexpr double radians_per(AngleUnit unit) {
  switch (unit) {
    case AngleUnit::rad: return 1.0;
    case AngleUnit::deg: return kPi / 180.0;
    case AngleUnit::gr: return kPi / 200.0;
    case AngleUnit::dmgr: return kPi / 200.0 * 1e-4;
    case AngleUnit::hours: return kPi / 12.0;
  }
  return 1.0;
}

inline std::string_view unit_suffix(AngleUnit unit) {
  switch (unit) {
    case AngleUnit::rad: return "rad";
    case AngleUnit::deg: return "deg";
    case AngleUnit::gr: return "gr";
    case AngleUnit::dmgr: return "dmgr";
    case AngleUnit::hours: return "h";
  }
  return "";
}

inline AngleUnit parse_unit(std::string_view name) {
  if (name == "rad") return AngleUnit::rad;
  if (name == "deg" || name == "d") return AngleUnit::deg;
  if (name == "gr" || name == "gon" || name == "grad") return AngleUnit::gr;
  if (name == "dmgr") return AngleUnit::dmgr;
  if (name == "h" || name == "hours") return AngleUnit::hours;
  throw ParseError("unknown angle unit '" + std::string(name) + "'");
}

/// Plane angle. Stored in radians; units only appear at construction and
/// formatting time.
class Angle {
 public:
  constexpr Angle() = default;

  static constexpr Angle radians(double v) { return Angle(v); }
  static constexpr Angle degrees(double v) { return Angle(v * radians_per(AngleUnit::deg)); }
  static constexpr Angle grades(double v) { return Angle(v * radians_per(AngleUnit::gr)); }
  static constexpr Angle dmgr(double v) { return Angle(v * radians_per(AngleUnit::dmgr)); }
  static constexpr Angle hours(double v) { return Angle(v * radians_per(AngleUnit::hours)); }
  static constexpr Angle in(AngleUnit unit, double v) { return Angle(v * radians_per(unit)); }
  /// Sexagesimal degrees; the sign of the first non-zero field applies to all.
  static Angle dms(double d, double m, double s = 0.0) {
    const bool neg = d < 0 || (d == 0 && (m < 0 || (m == 0 && s < 0)));
    const double mag = std::abs(d) + std::abs(m) / 60.0 + std::abs(s) / 3600.0;
    return degrees(neg ? -mag : mag);
  }
  static Angle hms(double h, double m, double s = 0.0) {
    const bool neg = h < 0 || (h == 0 && (m < 0 || (m == 0 && s < 0)));
    const double mag = std::abs(h) + std::abs(m) / 60.0 + std::abs(s) / 3600.0;
    return hours(neg ? -mag : mag);
  }

  constexpr double rad() const { return rad_; }
  constexpr double deg() const { return rad_ / radians_per(AngleUnit::deg); }
  constexpr double gr() const { return rad_ / radians_per(AngleUnit::gr); }
  constexpr double dmgr() const { return rad_ / radians_per(AngleUnit::dmgr); }
  constexpr double hours() const { return rad_ / radians_per(AngleUnit::hours); }
  constexpr double in(AngleUnit unit) const { return rad_ / radians_per(unit); }

  double sin() const { return std::sin(rad_); }
  double cos() const { return std::cos(rad_); }
  double tan() const { return std::tan(rad_); }

  /// Representative in [0, 2pi).
  Angle normalized_positive() const {
    double r = std::fmod(rad_, 2 * kPi);
    if (r < 0) r += 2 * kPi;
    if (r >= 2 * kPi) r = 0;
    return Angle(r);
  }
  /// Representative in (-pi, pi].
  Angle normalized_signed() const {
    double r = normalized_positive().rad_;
    if (r > kPi) r -= 2 * kPi;
    return Angle(r);
  }

  constexpr Angle operator-() const { return Angle(-rad_); }
  constexpr Angle operator+(Angle o) const { return Angle(rad_ + o.rad_); }
  constexpr Angle operator-(Angle o) const { return Angle(rad_ - o.rad_); }
  constexpr Angle operator*(double k) const { return Angle(rad_ * k); }
  constexpr Angle operator/(double k) const { return Angle(rad_ / k); }
  constexpr Angle& operator+=(Angle o) { rad_ += o.rad_; return *this; }
  constexpr Angle& operator-=(Angle o) { rad_ -= o.rad_; return *this; }
  constexpr auto operator<=>(const Angle&) const = default;

 private:
  constexpr explicit Angle(double r) : rad_(r) {}
  double rad_ = 0.0;
};

constexpr Angle operator*(double k, Angle a) { return a * k; }

namespace detail {

inline double to_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError("not a number: '" + std::string(s) + "'");
  return v;
}

inline std::string fixed(double v, int decimals) {
  char buf[64];
  if (v == 0.0) v = 0.0;  // drop negative zero
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

// Splits "<a><sep1><b><sep2><c><sep3>" style sexagesimal text. Returns false
// when the string carries none of the separators.
inline bool split_sexagesimal(std::string_view s, std::string_view seps_major,
                              double& major, double& minutes, double& seconds, bool& negative) {
  negative = false;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto find_any = [](std::string_view text, std::initializer_list<std::string_view> keys,
                     std::size_t& len) {
    std::size_t best = std::string_view::npos;
    for (auto k : keys) {
      auto p = text.find(k);
      if (p != std::string_view::npos && (best == std::string_view::npos || p < best)) {
        best = p;
        len = k.size();
      }
    }
    return best;
  };
  std::size_t len = 0;
  std::size_t p = std::string_view::npos;
  for (std::size_t i = 0; i < seps_major.size(); ++i) {
    auto q = s.find(seps_major[i]);
    if (q != std::string_view::npos && (p == std::string_view::npos || q < p)) {
      p = q;
      len = 1;
    }
  }
  if (p == std::string_view::npos) {
    p = find_any(s, {"°"}, len);
    if (p == std::string_view::npos) return false;
  }
  major = to_double(s.substr(0, p));
  s.remove_prefix(p + len);
  minutes = 0.0;
  seconds = 0.0;
  if (s.empty()) return true;
  p = find_any(s, {"mn", "m", "'", "′"}, len);
  if (p == std::string_view::npos) throw ParseError("expected minutes field");
  minutes = to_double(s.substr(0, p));
  s.remove_prefix(p + len);
  if (s.empty()) return true;
  p = find_any(s, {"s", "\"", "″"}, len);
  if (p == std::string_view::npos || p + len != s.size()) throw ParseError("expected seconds field");
  seconds = to_double(s.substr(0, p));
  return true;
}

}  // namespace detail

/// Parses an angle. Accepted forms:
///   "40.9193gr", "1.52dmgr", "0.25rad", "36.5deg", "90d"
///   "36d54m", "36°54'30\"", "6h37m19.72s", "0h20mn57s"
/// A bare number takes `default_unit`.
inline Angle parse_angle(std::string_view text, AngleUnit default_unit = AngleUnit::gr) {
  std::string_view s = text;
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty angle");
  for (auto [suffix, unit] : {std::pair{std::string_view("dmgr"), AngleUnit::dmgr},
                              std::pair{std::string_view("grad"), AngleUnit::gr},
                              std::pair{std::string_view("gon"), AngleUnit::gr},
                              std::pair{std::string_view("gr"), AngleUnit::gr},
                              std::pair{std::string_view("rad"), AngleUnit::rad},
                              std::pair{std::string_view("deg"), AngleUnit::deg}}) {
    if (s.ends_with(suffix)) {
      auto num = s.substr(0, s.size() - suffix.size());
      return Angle::in(unit, detail::to_double(num));
    }
  }
  double major = 0, minutes = 0, seconds = 0;
  bool neg = false;
  if (detail::split_sexagesimal(s, "h", major, minutes, seconds, neg)) {
    auto a = Angle::hms(major, minutes, seconds);
    return neg ? -a : a;
  }
  if (detail::split_sexagesimal(s, "d", major, minutes, seconds, neg)) {
    auto a = Angle::dms(major, minutes, seconds);
    return neg ? -a : a;
  }
  return Angle::in(default_unit, detail::to_double(s));
}

/// Fixed-point text in the requested unit, without suffix.
inline std::string format_angle(Angle a, AngleUnit unit, int decimals) {
  return detail::fixed(a.in(unit), decimals);
}

/// Sexagesimal hours rounded to 10^-decimals seconds, e.g. "6h37m19.72s".
/// Rounding is done on an integer count so equal inputs always print equal.
inline std::string format_hms(double hours, int decimals = 2) {
  const bool neg = hours < 0;
  const double scale = std::pow(10.0, decimals);
  long long ticks = std::llround(std::abs(hours) * 3600.0 * scale);
  const long long per_sec = static_cast<long long>(scale);
  const long long h = ticks / (3600 * per_sec);
  ticks -= h * 3600 * per_sec;
  const long long m = ticks / (60 * per_sec);
  ticks -= m * 60 * per_sec;
  std::string sec = std::to_string(ticks / per_sec);
  if (decimals > 0) {
    std::string frac = std::to_string(ticks % per_sec);
    frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
    sec += "." + frac;
  }
  return (neg ? "-" : "") + std::to_string(h) + "h" + std::to_string(m) + "m" + sec + "s";
}

/// Sexagesimal degrees, e.g. "36d54m0.000s".
inline std::string format_dms(Angle a, int decimals = 3) {
  std::string s = format_hms(a.deg(), decimals);
  s[s.find('h')] = 'd';
  return s;
}

}  // namespace geodesy
