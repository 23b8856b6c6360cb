#pragma once

// Command-line front end. run_cli() takes the arguments without the program
// name and writes to the given streams, so tests can drive it in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fixtures.hpp"
#include "geodesy/cartgeo.hpp"
#include "geodesy/catalog.hpp"
#include "geodesy/diffgeo.hpp"
#include "geodesy/geocore.hpp"
#include "geodesy/lsq.hpp"
#include "geodesy/orbits.hpp"
#include "geodesy/projmaps.hpp"
#include "geodesy/reduce.hpp"
#include "geodesy/sphastro.hpp"

#ifndef GEODESY_DATA_DIR
#define GEODESY_DATA_DIR "data"
#endif

namespace geodesy::cli {

/// A numeric cell keeps its print precision; text cells print verbatim.
struct Num {
  double v;
  int decimals;
};
using Cell = std::variant<Num, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline void write_table(const Table& t, bool json, std::ostream& out) {
  if (json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
      nlohmann::ordered_json o;
      for (size_t i = 0; i < r.size(); ++i) {
        const auto* n = std::get_if<Num>(&r[i]);
        if (!n) o[t.columns[i]] = std::get<std::string>(r[i]);
        else if (n->decimals == 0) o[t.columns[i]] = static_cast<long long>(std::llround(n->v));
        else o[t.columns[i]] = std::stod(detail::fixed(n->v, n->decimals));  // same rounding as CSV
      }
      arr.push_back(o);
    }
    out << arr.dump(2) << '\n';
    return;
  }
  for (size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& r : t.rows) {
    for (size_t i = 0; i < r.size(); ++i) {
      if (i) out << ',';
      if (const auto* n = std::get_if<Num>(&r[i])) out << detail::fixed(n->v, n->decimals);
      else out << csv_cell(std::get<std::string>(r[i]));
    }
    out << '\n';
  }
}

/// Print precision of an angle in the output unit: about 0.1 mm on the Earth.
inline int angle_decimals(AngleUnit u) {
  switch (u) {
    case AngleUnit::rad: return 11;
    case AngleUnit::deg: return 9;
    case AngleUnit::gr: return 8;
    case AngleUnit::dmgr: return 4;
    case AngleUnit::hours: return 10;
  }
  return 10;
}

struct Context {
  bool json = false;
  std::string unit = "gr";
  std::string ell = "clarke1880";
  std::string data_dir = GEODESY_DATA_DIR;

  AngleUnit out_unit() const { return parse_unit(unit); }
  Num angle(Angle a) const { return {a.in(out_unit()), angle_decimals(out_unit())}; }
  Angle parse(const std::string& s) const { return parse_angle(s, out_unit()); }

  Ellipsoid ellipsoid() const {
    EllipsoidRegistry reg;
    std::ifstream in(data_dir + "/ellipsoids.csv");
    if (in) reg.load_csv(in);
    return reg.get(ell);
  }

  ZoneRegistry zones() const {
    ZoneRegistry reg;
    reg.load_file(data_dir + "/lambert_zones.csv");
    return reg;
  }
};

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> f;
  std::stringstream ss(s);
  for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
  return f;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

// ------------------------------------------------------------------ commands

struct ConvertArgs {
  std::string to = "geodetic";
  std::string method = "iter1";
  std::vector<std::string> values;
};

inline Table cmd_convert(const Context& cx, const ConvertArgs& a) {
  if (a.values.size() != 3) throw ParseError("convert expects three values");
  const Ellipsoid ell = cx.ellipsoid();
  if (a.to == "cartesian") {
    const GeodeticCoord g{cx.parse(a.values[0]), cx.parse(a.values[1]), detail::to_double(a.values[2])};
    const auto c = geodetic_to_cart(ell, g);
    return {{"x", "y", "z"}, {{Num{c.x, 4}, Num{c.y, 4}, Num{c.z, 4}}}};
  }
  const CartesianCoord c{detail::to_double(a.values[0]), detail::to_double(a.values[1]), detail::to_double(a.values[2])};
  if (a.method == "finite" || a.method == "series") {
    const GeodeticCoord g = a.method == "finite" ? cart_to_geodetic_finite(ell, c) : cart_to_geodetic_series(ell, c, 4);
    return {{"phi", "lambda", "h"}, {{cx.angle(g.phi), cx.angle(g.lambda), Num{g.h, 4}}}};
  }
  const std::map<std::string, IterMethod> m{{"iter1", IterMethod::Iter1}, {"iter2", IterMethod::Iter2}, {"iter3", IterMethod::Iter3}};
  const auto r = cart_to_geodetic_iter(ell, c, m.at(a.method));
  return {{"phi", "lambda", "h", "iterations"},
          {{cx.angle(r.geo.phi), cx.angle(r.geo.lambda), Num{r.geo.h, 4}, Num{static_cast<double>(r.report.iterations), 0}}}};
}

struct ArcArgs {
  std::optional<std::string> phi;
  std::optional<double> beta;
};

inline Table cmd_arc(const Context& cx, const ArcArgs& a) {
  const Ellipsoid ell = cx.ellipsoid();
  const MeridianArc arc(ell);
  if (a.phi) {
    const Angle phi = cx.parse(*a.phi);
    return {{"phi", "beta", "order"}, {{cx.angle(phi), Num{arc(phi), 4}, Num{static_cast<double>(arc.order()), 0}}}};
  }
  if (a.beta) {
    const Angle phi = meridian_arc_inverse(ell, *a.beta);
    return {{"phi", "beta", "order"}, {{cx.angle(phi), Num{*a.beta, 4}, Num{static_cast<double>(arc.order()), 0}}}};
  }
  throw ParseError("arc needs --phi or --beta");
}

struct ProjectArgs {
  std::string proj = "lambert";
  std::string zone = "Nord";
  std::string lambda0 = "9d";
  double R = 6378000.0;
  bool inverse = false;
  std::vector<std::string> values;
};

inline Table cmd_project(const Context& cx, const ProjectArgs& a) {
  if (a.values.size() != 2) throw ParseError("project expects two values");
  if (a.inverse) {
    if (a.proj != "lambert") throw DomainError("inverse is available for lambert only");
    const LambertConic lc(cx.zones().get(a.zone));
    const auto g = lc.inverse({detail::to_double(a.values[0]), detail::to_double(a.values[1])});
    return {{"phi", "lambda"}, {{cx.angle(g.phi), cx.angle(g.lambda)}}};
  }
  const Angle phi = cx.parse(a.values[0]), lam = cx.parse(a.values[1]);
  if (a.proj == "lambert") {
    const LambertConic lc(cx.zones().get(a.zone));
    const auto p = lc.forward(phi, lam);
    return {{"X", "Y", "gamma", "scale"}, {{Num{p.X, 4}, Num{p.Y, 4}, cx.angle(lc.convergence(lam)), Num{lc.scale(phi), 10}}}};
  }
  if (a.proj == "utm") {
    const auto p = utm_truncated_forward(cx.ellipsoid(), cx.parse(a.lambda0), phi, lam);
    return {{"X", "Y"}, {{Num{p.X, 4}, Num{p.Y, 4}}}};
  }
  if (a.proj == "mercator") {
    const auto p = mercator_forward(a.R, phi, lam);
    return {{"X", "Y"}, {{Num{p.X, 4}, Num{p.Y, 4}}}};
  }
  if (a.proj == "polar") {
    const auto p = polar_stereo_forward(a.R, phi, lam);
    return {{"X", "Y"}, {{Num{p.X, 4}, Num{p.Y, 4}}}};
  }
  if (a.proj == "gauss") {
    const Ellipsoid ell = cx.ellipsoid();
    const auto g = gauss_sphere_fit(ell, phi);
    return {{"c", "R", "psi0"}, {{Num{g.c, 12}, Num{g.R_sphere, 4}, cx.angle(g.psi0)}}};
  }
  throw ParseError("unknown projection '" + a.proj + "'");
}

struct ReduceArgs {
  double dp = 0, ha = 0, hb = 0;
  std::optional<std::string> site;
  double R = kDefaultEarthRadius;
  std::optional<double> module;
  std::optional<double> cm_per_km;
};

inline Table cmd_reduce(const Context& cx, const ReduceArgs& a) {
  (void)cx;
  DistanceObservation o{a.dp, a.ha, a.hb, std::nullopt, a.R};
  std::optional<GridScale> s;
  if (a.module) s = GridScale::module(*a.module);
  if (a.cm_per_km) s = GridScale::cm_per_km(*a.cm_per_km);
  Table t{{"method", "D0", "De", "Dr"}, {}};
  auto row = [&](const std::string& name, std::optional<double> d0, double de) {
    t.rows.push_back({name, d0 ? Cell{Num{*d0, 4}} : Cell{std::string("-")}, Num{de, 4},
                      s ? Cell{Num{to_grid(de, *s), 4}} : Cell{std::string("-")}});
  };
  const auto rig = reduce_rigorous(o);
  row("rigorous", rig.d0, rig.de);
  row("corrections", std::nullopt, reduce_by_corrections(o).de);
  if (a.site) {
    o.site_angle = parse_angle(*a.site, cx.out_unit());
    const auto sr = reduce_site_angle(o);
    row("site-angle", sr.d0, sr.de);
  }
  return t;
}

struct AstroArgs {
  std::string phi, delta;
  std::optional<std::string> ah;
  std::optional<std::string> hsg0, lambda, alpha;
  double elapsed = 0;
  bool set = false;
};

inline Table cmd_astro(const Context& cx, const AstroArgs& a) {
  const Angle phi = cx.parse(a.phi), delta = cx.parse(a.delta);
  if (a.set) {
    const Angle H = hour_angle_of_set(phi, delta);
    return {{"AH_set", "AH_set_h"}, {{cx.angle(H), std::string(format_hms(H.hours()))}}};
  }
  Angle ah;
  std::string hsl = "-";
  if (a.ah) {
    ah = parse_angle(*a.ah, AngleUnit::hours);
  } else if (a.hsg0 && a.lambda && a.alpha) {
    const auto r = sidereal_chain(parse_angle(*a.hsg0, AngleUnit::hours).hours(), a.elapsed,
                                  parse_angle(*a.lambda, AngleUnit::hours).hours(), parse_angle(*a.alpha, AngleUnit::hours).hours());
    ah = r.ah;
    hsl = format_hms(r.hsl_hours);
  } else {
    throw ParseError("astro needs --ah, or --hsg0 with --lambda and --alpha");
  }
  return {{"HSL", "AH", "z", "Az"},
          {{hsl, std::string(format_hms(ah.hours())), cx.angle(zenith_distance(phi, delta, ah)), cx.angle(star_azimuth(phi, delta, ah))}}};
}

struct CurvatureArgs {
  std::string surface = "enneper";
  double u = 0, v = 0;
  bool numeric = false;
};

inline Table cmd_curvature(const Context&, const CurvatureArgs& a) {
  auto s = catalog::surface_by_name(a.surface).surface;
  if (a.numeric) s = s.numeric();
  const auto f = fundamental_forms(s, a.u, a.v);
  const auto k = curvatures(f);
  return {{"E", "F", "G", "L", "M", "N", "K", "H", "k1", "k2"},
          {{Num{f.E, 10}, Num{f.F, 10}, Num{f.G, 10}, Num{f.L, 10}, Num{f.M, 10}, Num{f.N, 10}, Num{k.K, 10}, Num{k.H, 10},
            Num{k.k1, 10}, Num{k.k2, 10}}}};
}

struct OrbitArgs {
  double apo = 0, peri = 0;
  double R = 6371000.0;
  std::optional<double> r;
};

inline Table cmd_orbit(const Context& cx, const OrbitArgs& a) {
  const auto o = orbit_from_apsides(a.apo, a.peri, a.R);
  Table t{{"a", "e", "T", "E", "nu", "t"}, {}};
  std::vector<Cell> row{Num{o.a, 3}, Num{o.e, 12}, Num{period(o), 3}};
  if (a.r) {
    const Angle E = eccentric_anomaly_at_radius(o, *a.r);
    const Angle nu = anomaly_convert(AnomalyKind::eccentric, AnomalyKind::true_anomaly, E, o.e);
    row.push_back(cx.angle(E));
    row.push_back(cx.angle(nu));
    row.push_back(Num{time_since_perigee(o, nu), 3});
  } else {
    row.insert(row.end(), {std::string("-"), std::string("-"), std::string("-")});
  }
  t.rows.push_back(row);
  return t;
}

inline Table params_table(const SevenParams& p, double rms) {
  return {{"tx", "ty", "tz", "scale_ppm", "rx", "ry", "rz", "rms"},
          {{Num{p.tx, 5}, Num{p.ty, 5}, Num{p.tz, 5}, Num{p.scale_ppm, 5}, Num{p.rx, 12}, Num{p.ry, 12}, Num{p.rz, 12}, Num{rms, 5}}}};
}

inline Table cmd_fit_datum(const Context&, const std::string& file) {
  auto in = open_input(file);
  const auto fit = bursa_wolf_fit(load_common_points(in));
  return params_table(fit.params, fit.rms);
}

struct ApplyArgs {
  std::string params;
  std::string file;
};

inline Table cmd_apply_datum(const Context&, const ApplyArgs& a) {
  const auto f = split_csv(a.params);
  if (f.size() != 7) throw ParseError("--params needs tx,ty,tz,scale_ppm,rx,ry,rz");
  SevenParams p{detail::to_double(f[0]), detail::to_double(f[1]), detail::to_double(f[2]), detail::to_double(f[3]),
                detail::to_double(f[4]), detail::to_double(f[5]), detail::to_double(f[6])};
  auto in = open_input(a.file);
  Table t{{"name", "x", "y", "z"}, {}};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto c = split_csv(line);
    if (c.size() != 4) throw ParseError("point row needs name,x,y,z: " + line);
    if (c[0] == "name") continue;
    const auto q = bursa_wolf_apply(p, {detail::to_double(c[1]), detail::to_double(c[2]), detail::to_double(c[3])});
    t.rows.push_back({c[0], Num{q.x, 4}, Num{q.y, 4}, Num{q.z, 4}});
  }
  return t;
}

struct LevelArgs {
  std::string file;
  std::vector<std::string> fixed;
  std::optional<double> precision;
};

inline Table cmd_adjust_level(const Context&, const LevelArgs& a) {
  std::map<std::string, double> fixed;
  for (const auto& f : a.fixed) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw ParseError("--fixed expects NAME=HEIGHT");
    fixed[f.substr(0, eq)] = detail::to_double(f.substr(eq + 1));
  }
  auto in = open_input(a.file);
  const auto r = adjust_leveling(load_leveling(in), fixed, a.precision);
  Table t{{"node", "H", "sigma"}, {}};
  for (const auto& [n, h] : r.heights) t.rows.push_back({n, Num{h, 4}, Num{r.sigma.at(n), 4}});
  t.rows.push_back({std::string("s0_mm_per_km"), Num{r.mm_per_km, 3}, std::string("-")});
  return t;
}

struct TriangleArgs {
  std::string A, B, C;
  double a = 0, b = 0, c = 0;
  std::string sigma_angle = "3.1dmgr";
  std::vector<double> sigma_sides{0.005, 0.010, 0.005};
};

inline Table cmd_adjust_triangle(const Context& cx, const TriangleArgs& a) {
  if (a.sigma_sides.size() != 3) throw ParseError("--sigma-sides needs three values");
  const Angle s = parse_angle(a.sigma_angle, AngleUnit::dmgr);
  const TriangleObservations o{cx.parse(a.A), cx.parse(a.B), cx.parse(a.C), s, s, s, a.a, a.b, a.c,
                               a.sigma_sides[0], a.sigma_sides[1], a.sigma_sides[2]};
  const auto r = adjust_triangle(o);
  Table t{{"quantity", "adjusted", "residual", "weight"}, {}};
  const char* names[] = {"a", "b", "c", "A", "B", "C"};
  const double side[] = {r.a, r.b, r.c};
  const Angle ang[] = {r.A, r.B, r.C};
  for (int i = 0; i < 6; ++i) {
    const Cell value = i < 3 ? Cell{Num{side[i], 4}} : Cell{cx.angle(ang[i - 3])};
    t.rows.push_back({std::string(names[i]), value, Num{r.residuals(i), 3}, Num{r.weights(i), 6}});
  }
  t.rows.push_back({std::string("s2"), Num{r.s2, 6}, std::string("-"), std::string("-")});
  return t;
}

// ------------------------------------------------------------------ fixtures

inline std::string number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << v;
  return os.str();
}

/// Runs the selected fixture cases against the golden file; returns the exit code.
inline int cmd_fixtures_run(const Context& cx, std::vector<std::string> ids, bool all, const std::string& golden_path,
                            std::ostream& out) {
  const auto golden = fixtures::load_golden(golden_path);
  const auto cases = fixtures::registry();
  if (all) {
    ids.clear();
    for (const auto& c : cases) ids.push_back(c.id);
  }
  if (ids.empty()) throw ParseError("fixtures run needs case ids or --all");
  int failed = 0;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& id : ids) {
    auto it = std::find_if(cases.begin(), cases.end(), [&](const auto& c) { return c.id == id; });
    if (it == cases.end()) throw DomainError("unknown fixture '" + id + "'");
    const auto r = fixtures::run_case(*it, golden);
    failed += r.pass ? 0 : 1;
    if (cx.json) {
      nlohmann::ordered_json o{{"id", r.id}, {"pass", r.pass}};
      if (!r.error.empty()) o["error"] = r.error;
      auto keys = nlohmann::ordered_json::array();
      for (const auto& k : r.keys)
        keys.push_back({{"key", k.key}, {"actual", k.actual}, {"expected", k.expected}, {"tolerance", k.tolerance},
                        {"provenance", k.provenance}, {"pass", k.pass}});
      o["keys"] = keys;
      arr.push_back(o);
      continue;
    }
    out << (r.pass ? "PASS " : "FAIL ") << r.id;
    if (!r.error.empty()) out << "  error: " << r.error;
    out << '\n';
    for (const auto& k : r.keys)
      out << "  " << (k.pass ? "ok   " : "FAIL ") << k.key << " = " << number(k.actual) << "  expected " << number(k.expected)
          << " +- " << number(k.tolerance) << " [" << k.provenance << "]\n";
  }
  if (cx.json) out << arr.dump(2) << '\n';
  else out << "fixtures: " << ids.size() << " run, " << ids.size() - failed << " passed, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

// ------------------------------------------------------------------ driver

inline int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesy toolkit: conversions, projections, reductions, astronomy, orbits and adjustments", "geodesy_cli"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Context cx;
  app.add_flag("--json", cx.json, "JSON output with stable key names");
  app.add_option("--unit", cx.unit, "angle unit for input and output: gr|deg|rad|dmgr")
      ->check(CLI::IsMember({"gr", "deg", "rad", "dmgr"}));
  app.add_option("--ell", cx.ell, "ellipsoid name (clarke1880, grs, or from ellipsoids.csv)");
  app.add_option("--data", cx.data_dir, "directory holding ellipsoids.csv, lambert_zones.csv and golden/");

  std::optional<Table> result;
  int code = 0;

  ConvertArgs conv;
  auto* c_conv = app.add_subcommand("convert", "Cartesian <-> geodetic");
  c_conv->add_option("--to", conv.to, "geodetic|cartesian")->check(CLI::IsMember({"geodetic", "cartesian"}));
  c_conv->add_option("--method", conv.method, "iter1|iter2|iter3|finite|series")
      ->check(CLI::IsMember({"iter1", "iter2", "iter3", "finite", "series"}));
  c_conv->add_option("values", conv.values, "x y z, or phi lambda h")->required()->expected(3);
  c_conv->callback([&] { result = cmd_convert(cx, conv); });

  ArcArgs arcs;
  auto* c_arc = app.add_subcommand("arc", "meridian arc length, or its inverse");
  c_arc->add_option("--phi", arcs.phi, "latitude");
  c_arc->add_option("--beta", arcs.beta, "arc length, m");
  c_arc->callback([&] { result = cmd_arc(cx, arcs); });

  ProjectArgs pj;
  auto* c_pj = app.add_subcommand("project", "map projections");
  c_pj->add_option("--proj", pj.proj, "lambert|utm|mercator|polar|gauss")
      ->check(CLI::IsMember({"lambert", "utm", "mercator", "polar", "gauss"}));
  c_pj->add_option("--zone", pj.zone, "Lambert zone name");
  c_pj->add_option("--lambda0", pj.lambda0, "central meridian for utm");
  c_pj->add_option("--R", pj.R, "sphere radius for mercator and polar, m");
  c_pj->add_flag("--inverse", pj.inverse, "X Y to phi lambda (lambert)");
  c_pj->add_option("values", pj.values, "phi lambda, or X Y with --inverse")->required()->expected(2);
  c_pj->callback([&] { result = cmd_project(cx, pj); });

  ReduceArgs rd;
  auto* c_rd = app.add_subcommand("reduce", "slope distance to the ellipsoid and the grid");
  c_rd->add_option("--dp", rd.dp, "slope distance, m")->required();
  c_rd->add_option("--ha", rd.ha, "altitude of the station, m")->required();
  c_rd->add_option("--hb", rd.hb, "altitude of the target, m")->required();
  c_rd->add_option("--site", rd.site, "site angle at the station");
  c_rd->add_option("--R", rd.R, "reference radius, m");
  auto* o_mod = c_rd->add_option("--module", rd.module, "linear scale of the projection");
  c_rd->add_option("--cm-per-km", rd.cm_per_km, "scale alteration, cm/km")->excludes(o_mod);
  c_rd->callback([&] { result = cmd_reduce(cx, rd); });

  AstroArgs as;
  auto* c_as = app.add_subcommand("astro", "hour angle, zenith distance and azimuth of a star");
  c_as->add_option("--phi", as.phi, "latitude")->required();
  c_as->add_option("--delta", as.delta, "declination")->required();
  c_as->add_option("--ah", as.ah, "hour angle (e.g. 4h23m26.82s)");
  c_as->add_option("--hsg0", as.hsg0, "Greenwich sidereal time at 0h TU");
  c_as->add_option("--elapsed", as.elapsed, "hours of TU since 0h");
  c_as->add_option("--lambda", as.lambda, "longitude east, in time");
  c_as->add_option("--alpha", as.alpha, "right ascension");
  c_as->add_flag("--set", as.set, "hour angle at setting");
  c_as->callback([&] { result = cmd_astro(cx, as); });

  CurvatureArgs cv;
  auto* c_cv = app.add_subcommand("curvature", "fundamental forms and curvatures of a catalog surface");
  c_cv->add_option("--surface", cv.surface, "catalog surface name");
  c_cv->add_option("--u", cv.u)->required();
  c_cv->add_option("--v", cv.v)->required();
  c_cv->add_flag("--numeric", cv.numeric, "finite differences instead of analytic partials");
  c_cv->callback([&] { result = cmd_curvature(cx, cv); });

  OrbitArgs ob;
  auto* c_ob = app.add_subcommand("orbit", "Keplerian orbit from apsidal altitudes");
  c_ob->add_option("--apo", ob.apo, "apoapsis altitude, m")->required();
  c_ob->add_option("--peri", ob.peri, "periapsis altitude, m")->required();
  c_ob->add_option("--R", ob.R, "body radius, m");
  c_ob->add_option("--r", ob.r, "radius at which to locate the satellite, m");
  c_ob->callback([&] { result = cmd_orbit(cx, ob); });

  std::string fit_file;
  auto* c_fit = app.add_subcommand("fit-datum", "seven-parameter fit from common points (name,x1,y1,z1,x2,y2,z2)");
  c_fit->add_option("file", fit_file)->required();
  c_fit->callback([&] { result = cmd_fit_datum(cx, fit_file); });

  ApplyArgs ap;
  auto* c_ap = app.add_subcommand("apply-datum", "apply seven parameters to points (name,x,y,z)");
  c_ap->add_option("--params", ap.params, "tx,ty,tz,scale_ppm,rx,ry,rz")->required();
  c_ap->add_option("file", ap.file)->required();
  c_ap->callback([&] { result = cmd_apply_datum(cx, ap); });

  LevelArgs lv;
  auto* c_lv = app.add_subcommand("adjust-level", "leveling network (from,to,dh,dist_km)");
  c_lv->add_option("file", lv.file)->required();
  c_lv->add_option("--fixed", lv.fixed, "NAME=HEIGHT, repeatable")->required();
  c_lv->add_option("--precision", lv.precision, "a-priori precision, mm/sqrt(km)");
  c_lv->callback([&] { result = cmd_adjust_level(cx, lv); });

  TriangleArgs tr;
  auto* c_tr = app.add_subcommand("adjust-triangle", "plane triangle with three sides and three angles observed");
  c_tr->add_option("--A", tr.A)->required();
  c_tr->add_option("--B", tr.B)->required();
  c_tr->add_option("--C", tr.C)->required();
  c_tr->add_option("--a", tr.a)->required();
  c_tr->add_option("--b", tr.b)->required();
  c_tr->add_option("--c", tr.c)->required();
  c_tr->add_option("--sigma-angle", tr.sigma_angle, "angle standard deviation");
  c_tr->add_option("--sigma-sides", tr.sigma_sides, "side standard deviations, m")->expected(3);
  c_tr->callback([&] { result = cmd_adjust_triangle(cx, tr); });

  auto* c_fx = app.add_subcommand("fixtures", "worked-exercise fixtures");
  c_fx->require_subcommand(1);
  auto* c_fl = c_fx->add_subcommand("list", "list fixture ids");
  c_fl->callback([&] {
    Table t{{"id", "summary"}, {}};
    for (const auto& c : fixtures::registry()) t.rows.push_back({c.id, c.summary});
    result = t;
  });
  std::vector<std::string> run_ids;
  bool run_all = false;
  std::string golden;
  auto* c_fr = c_fx->add_subcommand("run", "run fixtures against the golden file");
  c_fr->add_option("ids", run_ids, "fixture ids");
  c_fr->add_flag("--all", run_all, "run every fixture");
  c_fr->add_option("--golden", golden, "golden CSV (default <data>/golden/fixtures.csv)");
  c_fr->callback([&] {
    code = cmd_fixtures_run(cx, run_ids, run_all, golden.empty() ? cx.data_dir + "/golden/fixtures.csv" : golden, out);
  });

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (result) write_table(*result, cx.json, out);
  return code;
}

}  // namespace geodesy::cli
