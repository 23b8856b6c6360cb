#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "geodesy/angle.hpp"
#include "geodesy/error.hpp"

namespace geodesy {

/// Reference ellipsoid of revolution given by its semi-major axis and first
/// eccentricity squared.
class Ellipsoid {
 public:
  Ellipsoid(double a, double e2) : a_(a), e2_(e2) {
    if (!(a > 0) || !std::isfinite(a)) throw DomainError("ellipsoid: a must be positive");
    if (!(e2 >= 0 && e2 < 1)) throw DomainError("ellipsoid: e2 must lie in [0, 1)");
  }

  static Ellipsoid sphere(double radius) { return Ellipsoid(radius, 0.0); }
  static Ellipsoid clarke1880() { return Ellipsoid(6378249.20, 0.0068034877); }
  static Ellipsoid grs() { return Ellipsoid(6378137.00, 0.00669438); }

  double a() const { return a_; }
  double e2() const { return e2_; }
  double e() const { return std::sqrt(e2_); }
  double b() const { return a_ * std::sqrt(1.0 - e2_); }
  double f() const { return 1.0 - std::sqrt(1.0 - e2_); }
  double ep2() const { return e2_ / (1.0 - e2_); }

  bool operator==(const Ellipsoid&) const = default;

 private:
  double a_;
  double e2_;
};

/// Named ellipsoids. Starts with the built-in presets; more can be read from a
/// CSV file with rows `name,a,e2` (lines starting with '#' are skipped).
class EllipsoidRegistry {
 public:
  EllipsoidRegistry() {
    entries_.emplace("clarke1880", Ellipsoid::clarke1880());
    entries_.emplace("grs", Ellipsoid::grs());
  }

  void add(const std::string& name, Ellipsoid ell) { entries_.insert_or_assign(name, ell); }

  void load_csv(std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> f;
      std::stringstream ss(line);
      for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
      if (f.size() != 3)
        throw ParseError("ellipsoid registry line " + std::to_string(lineno) + ": expected name,a,e2");
      if (f[0] == "name") continue;
      add(f[0], Ellipsoid(detail::to_double(f[1]), detail::to_double(f[2])));
    }
  }

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open ellipsoid registry '" + path + "'");
    load_csv(in);
  }

  std::optional<Ellipsoid> find(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  Ellipsoid get(const std::string& name) const {
    if (auto e = find(name)) return *e;
    throw DomainError("unknown ellipsoid '" + name + "'");
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
  }

 private:
  std::map<std::string, Ellipsoid> entries_;
};

}  // namespace geodesy
