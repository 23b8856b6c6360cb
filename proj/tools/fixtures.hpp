#pragma once

// Worked-exercise fixtures. Each case computes named values with the library;
// expected values and tolerances live in data/golden/fixtures.csv.

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "geodesy/cartgeo.hpp"
#include "geodesy/catalog.hpp"
#include "geodesy/diffgeo.hpp"
#include "geodesy/geocore.hpp"
#include "geodesy/lsq.hpp"
#include "geodesy/orbits.hpp"
#include "geodesy/polynomial.hpp"
#include "geodesy/projmaps.hpp"
#include "geodesy/reduce.hpp"
#include "geodesy/sphastro.hpp"

namespace geodesy::fixtures {

using Values = std::vector<std::pair<std::string, double>>;

struct FixtureCase {
  std::string id;
  std::string summary;
  std::function<Values()> run;
};

struct GoldenRow {
  std::string id, key;
  double expected = 0, tolerance = 0;
  std::string provenance;
};

namespace data {

inline Angle gr(double v) { return Angle::grades(v); }
inline Angle deg(double v) { return Angle::degrees(v); }

inline const CartesianCoord kP3{4300244.860, 1062094.681, 4574775.629};

inline LambertZone nord() {
  return {"Nord", Ellipsoid::clarke1880(), gr(40), gr(11), 0.999625544, 500000, 300000};
}
inline LambertZone sud() {
  return {"Sud", Ellipsoid::clarke1880(), gr(37), gr(11), 0.999625769, 500000, 300000};
}

inline std::vector<CommonPoint> bursa_wolf_common() {
  return {
      {"1", {4300244.860, 1062094.681, 4574775.629}, {4300245.018, 1062094.592, 4574775.510}},
      {"2", {4277737.502, 1115558.251, 4582961.996}, {4277737.661, 1115558.164, 4582961.878}},
      {"3", {4276816.431, 1081197.897, 4591886.356}, {4276816.590, 1081197.809, 4591886.238}},
      {"4", {4315183.431, 1135854.241, 4542857.520}, {4315183.590, 1135854.153, 4542857.402}},
      {"5", {4285934.717, 1110917.314, 4576361.689}, {4285934.876, 1110917.227, 4576361.571}},
      {"6", {4217271.349, 1193915.699, 4618635.464}, {4217271.512, 1193915.612, 4618635.348}},
      {"7", {4292630.700, 1079310.256, 4579117.105}, {4292630.858, 1079310.168, 4579116.986}},
  };
}

inline std::vector<std::pair<std::string, CartesianCoord>> bursa_wolf_targets() {
  return {{"A", {4351694.594, 1056274.819, 4526994.706}},
          {"B", {4319956.455, 1095408.043, 4548544.867}},
          {"C", {4303467.472, 1110727.257, 4560823.460}},
          {"D", {4202413.995, 1221146.648, 4625014.614}}};
}

inline std::vector<DirectionSet> quadrilateral() {
  return {{"A", {{"B", gr(0)}, {"C", gr(74.16667)}}},
          {"B", {{"D", gr(0)}, {"C", gr(82.46080)}, {"A", gr(170.62531)}}},
          {"C", {{"A", gr(0)}, {"B", gr(37.67099)}, {"D", gr(85.08302)}}},
          {"D", {{"C", gr(0)}, {"B", gr(70.12809)}}}};
}

inline std::vector<LevelingObs> leveling_p2() {
  return {{"A", "C", 1.878, 6.44}, {"A", "D", 3.831, 3.22}, {"C", "D", 1.954, 3.22},
          {"A", "B", 0.332, 6.44}, {"B", "D", 3.530, 3.22}, {"B", "C", 1.545, 6.44}};
}

// H_A - H_B = 0.509 etc., stored as to-minus-from
inline std::vector<LevelingObs> leveling_p1() {
  return {{"B", "A", 0.509, 1}, {"D", "B", 1.058, 1}, {"C", "A", 3.362, 1}, {"C", "D", 1.783, 1}, {"C", "B", 2.829, 1}};
}

inline TriangleObservations triangle_ex5() {
  const Angle s = Angle::dmgr(3.1);
  return {gr(43.77160), gr(98.39043), gr(57.83858), s, s, s, 333.841, 525.847, 414.815, 0.005, 0.010, 0.005};
}

inline LinearModel p5_printed() {
  MatrixXd A(5, 3);
  A << 1, 0, 0, 0, 1, 0, 1.00375, -0.83924, 0.00143, -1.00571, 1.20285, -0.66128, 0.00094, -0.36239, 0.65918;
  VectorXd L(5);
  L << 0, 0, 0.97981, -2.88449, 0.42396;
  VectorXd p(5);
  p << 0.277, 0.160, 1.524, 1.524, 1.524;
  return {A, L, LinearModel::weights_diag(p)};
}

inline NewtonProblem newton_fixture() {
  NewtonProblem p;
  p.f = [](const VectorXd& x) {
    const double u = x(0), v = x(1);
    return u * u * u * u + 6 * u * v + 1.5 * v * v + 36 * v + 405;
  };
  p.grad = [](const VectorXd& x) {
    const double u = x(0), v = x(1);
    return VectorXd((VectorXd(2) << 4 * u * u * u + 6 * v, 6 * u + 3 * v + 36).finished());
  };
  p.hess = [](const VectorXd& x) {
    return MatrixXd((MatrixXd(2, 2) << 12 * x(0) * x(0), 6, 6, 3).finished());
  };
  return p;
}

inline constexpr double kEarthR = 6378000.0;

}  // namespace data

inline std::vector<FixtureCase> registry() {
  using namespace data;
  const Ellipsoid clk = Ellipsoid::clarke1880();
  const Ellipsoid grs = Ellipsoid::grs();
  std::vector<FixtureCase> c;

  // ---- geocore
  c.push_back({"geocore.N.clarke36", "prime vertical radius at 36 deg",
               [=] { return Values{{"N", prime_vertical_radius(clk, deg(36))}}; }});
  c.push_back({"geocore.rho.clarke45", "meridian radius at 45 deg",
               [=] { return Values{{"rho", meridian_radius(clk, deg(45))}}; }});
  c.push_back({"geocore.geocentric.clarke45", "geocentric latitude of 45 deg", [=] {
                 return Values{{"omega_rad", latitude_convert(clk, LatitudeKind::geodetic, LatitudeKind::geocentric, deg(45)).rad()}};
               }});
  c.push_back({"geocore.isometric.clarke40gr", "isometric latitude at 40 gr and its inverse", [=] {
                 const double L = isometric_latitude(clk, gr(40));
                 return Values{{"L", L}, {"inverse_gr", isometric_latitude_inverse(clk, L).gr()}};
               }});
  c.push_back({"geocore.wallis.8", "Wallis integral W8(1)", [] { return Values{{"W8", wallis(8, Angle::radians(1.0))}}; }});
  c.push_back({"geocore.arc.grs.quarter", "quarter meridian, GRS", [=] {
                 const MeridianArc arc(grs);
                 return Values{{"Q", arc.quarter()}, {"order", static_cast<double>(arc.order())}};
               }});
  c.push_back({"geocore.arcinv.grs.5e6", "latitude at 5000 km of meridian arc",
               [=] { return Values{{"phi_rad", meridian_arc_inverse(grs, 5e6).rad()}}; }});
  c.push_back({"geocore.jacobi.clarke", "second equator crossing, Az = 100 gr", [=] {
                 return Values{{"lambda_H_rad", jacobi_equator_longitude(clk, Angle(), gr(100)).rad()},
                               {"lambda_H_60_rad", jacobi_equator_longitude(clk, Angle::radians(0.3), deg(60)).rad()}};
               }});
  c.push_back({"geocore.clairaut.torus", "torus Clairaut constant a=2 R=1 Az=pi/4",
               [] { return Values{{"C", torus_clairaut_constant(2.0, 1.0, Angle::radians(kPi / 4))}}; }});

  // ---- cartgeo
  const std::pair<const char*, IterMethod> methods[] = {
      {"iter1", IterMethod::Iter1}, {"iter2", IterMethod::Iter2}, {"iter3", IterMethod::Iter3}};
  for (const auto& [name, m] : methods) {
    c.push_back({std::string("cartgeo.p3.") + name, "GRS conversion of the Probleme 3 point", [=, m = m] {
                   const auto r = cart_to_geodetic_iter(grs, kP3, m);
                   return Values{{"phi_gr", r.geo.phi.gr()}, {"lambda_gr", r.geo.lambda.gr()}, {"h", r.geo.h},
                                 {"within_bound", r.report.bound_used < 0 || r.report.iterations <= r.report.bound_used ? 1.0 : 0.0}};
                 }});
  }
  c.push_back({"cartgeo.p3.finite", "GRS conversion of the Probleme 3 point, quartic method", [=] {
                 const auto g = cart_to_geodetic_finite(grs, kP3);
                 return Values{{"phi_gr", g.phi.gr()}, {"lambda_gr", g.lambda.gr()}, {"h", g.h}};
               }});
  c.push_back({"cartgeo.bound", "a-priori iteration bounds", [] {
                 return Values{{"k05", static_cast<double>(iteration_bound(0.5, 1.0, 1e-6))},
                               {"k01", static_cast<double>(iteration_bound(0.1, 1.0, 1e-6))},
                               {"done", static_cast<double>(iteration_bound(0.5, 1e-6, 1e-3))}};
               }});
  c.push_back({"cartgeo.cubic", "Cardan roots of x^3 - 7x + 6", [] {
                 auto r = real_roots(solve_cubic_cardan(-7, 6), 1e-9);
                 std::sort(r.begin(), r.end());
                 return Values{{"r1", r.at(0)}, {"r2", r.at(1)}, {"r3", r.at(2)}};
               }});
  c.push_back({"cartgeo.series.coeffs", "printed series coefficients at c = 1", [] {
                 const auto a = series_coefficients(1.0);
                 return Values{{"a3", a[3]}, {"a4", a[4]}};
               }});
  c.push_back({"cartgeo.series.midlat", "series method on a surface point at 45 deg", [=] {
                 const auto p = geodetic_to_cart(clk, {deg(45), deg(10), 0.0});
                 return Values{{"phi_rad", cart_to_geodetic_series(clk, p, 4).phi.rad()}};
               }});

  // ---- diffgeo
  c.push_back({"diffgeo.helix", "helix a=3 b=4", [] {
                 const auto f = frenet(catalog::helix(3, 4), 0.7);
                 return Values{{"kappa", f.kappa}, {"tau", f.tau},
                               {"length_2pi", arc_length(catalog::helix(3, 4), 0, 2 * kPi)}};
               }});
  c.push_back({"diffgeo.curve.p1", "curve (t^2, t^3, 9/16 t^4) at t = 1", [] {
                 const auto cv = catalog::cubic_quartic_curve(1.0);
                 const auto f = frenet(cv, 1.0);
                 const Vec3 centre = cv.position(1.0) + f.N / f.kappa;
                 return Values{{"kappa", f.kappa}, {"tau", f.tau}, {"cx", centre.x()}, {"cy", centre.y()}, {"cz", centre.z()},
                               {"s01", arc_length(cv, 0, 1)}};
               }});
  c.push_back({"diffgeo.quadratic.11", "first form of (u^2+v, u+v^2, uv) at (1,1)", [] {
                 const auto f = fundamental_forms(catalog::quadratic_patch(), 1, 1);
                 return Values{{"E", f.E}, {"F", f.F}, {"G", f.G}};
               }});
  c.push_back({"diffgeo.enneper", "Enneper at (0.3,-0.7)", [] {
                 const auto s = catalog::enneper();
                 const auto f = fundamental_forms(s, 0.3, -0.7);
                 return Values{{"E", f.E}, {"G", f.G}, {"H", curvatures(f).H}};
               }});
  c.push_back({"diffgeo.pseudosphere", "total curvature of both pseudosphere patches", [] {
                 return Values{{"K_log", curvatures(catalog::pseudosphere(), 1.0, 0.5).K},
                               {"K_th", curvatures(catalog::pseudosphere_hyperbolic(), 1.0, 0.3).K}};
               }});
  c.push_back({"diffgeo.graph", "graph curvatures of paraboloid and saddle at the origin", [] {
                 const auto p = graph_curvatures([](double x, double y) { return (x * x + y * y) / 2; }, 0.0, 0.0);
                 const auto s = graph_curvatures([](double x, double y) { return x * y; }, 0.0, 0.0);
                 return Values{{"K_parab", p.first}, {"H_parab", p.second}, {"K_saddle", s.first}, {"H_saddle", s.second}};
               }});
  c.push_back({"diffgeo.orthoK.ellipsoid", "orthogonal-metric K on the ellipsoid at 45 deg, times rho N", [=] {
                 auto A = [=](double u, double) { return meridian_radius(clk, Angle::radians(u)); };
                 auto B = [=](double u, double) { return prime_vertical_radius(clk, Angle::radians(u)) * std::cos(u); };
                 const Angle phi = deg(45);
                 const double K = orthogonal_metric_K(A, B, phi.rad(), 0.0);
                 return Values{{"K_rhoN", K * meridian_radius(clk, phi) * prime_vertical_radius(clk, phi)}};
               }});

  // ---- sphastro
  c.push_back({"sphastro.right", "right triangle a=pi/3, b=pi/4, C=pi/2", [] {
                 SphericalTriangle t;
                 t.a = Angle::radians(kPi / 3);
                 t.b = Angle::radians(kPi / 4);
                 t.C = Angle::radians(kPi / 2);
                 const auto s = triangle_solve(t);
                 return Values{{"c_rad", s.c.rad()}, {"A_rad", s.A.rad()}};
               }});
  c.push_back({"sphastro.ex3", "excess and closure of the Exercice 3 triangle", [] {
                 const Angle A = gr(80.16433), B = gr(55.77351), C = gr(64.06261);
                 const Angle eps = spherical_excess_sas(20135.7, 22143.5, A, 6371000.0);
                 return Values{{"alpha_gr", (A + B + C).gr()}, {"eps_dmgr", eps.dmgr()},
                               {"f_dmgr", closure(A, B, C, eps).dmgr()}};
               }});
  c.push_back({"sphastro.square", "spherical squares", [] {
                 return Values{{"a_2pi3", square_side(Angle::radians(2 * kPi / 3)).rad()},
                               {"a_06pi", square_side(Angle::radians(0.6 * kPi)).rad()},
                               {"d_06pi", square_diagonal(Angle::radians(0.6 * kPi)).rad()}};
               }});
  c.push_back({"sphastro.cassini", "Cassini-Soldner of (30 deg, 40 deg)", [] {
                 const auto [L, H] = cassini_soldner_forward(deg(30), deg(40));
                 return Values{{"L_deg", L.deg()}, {"H_deg", H.deg()}};
               }});
  c.push_back({"sphastro.set", "setting hour angle at 56 deg for delta 5 deg",
               [] { return Values{{"AH_deg", hour_angle_of_set(deg(56), deg(5)).deg()}}; }});
  c.push_back({"sphastro.trig1", "azimuth for delta 5, z 80, phi 56", [] {
                 const Angle ah = hour_angle_for_zenith(deg(56), deg(5), deg(80));
                 return Values{{"AH_deg", ah.deg()}, {"Az_deg", star_azimuth(deg(56), deg(5), ah).deg()}};
               }});
  c.push_back({"sphastro.p2", "phi 38, delta 89, HSL 6h37m19.72s, alpha 2h13m52.90s", [] {
                 const Angle ah = Angle::hms(6, 37, 19.72) - Angle::hms(2, 13, 52.90);
                 return Values{{"AH_h", ah.hours()}, {"Az_deg", star_azimuth(deg(38), deg(89), ah).deg()},
                               {"z_deg", zenith_distance(deg(38), deg(89), ah).deg()}};
               }});
  c.push_back({"sphastro.p3", "Andromeda galaxy at 21h TU", [] {
                 const auto r = sidereal_chain(20 + 35 / 60.0 + 28 / 3600.0, 21.0, 20 / 60.0 + 57 / 3600.0, 40 / 60.0);
                 const Angle phi = deg(43.521), delta = deg(41);
                 return Values{{"HSL_h", r.hsl_hours}, {"AH_h", r.ah.hours()}, {"z_deg", zenith_distance(phi, delta, r.ah).deg()},
                               {"Az_deg", star_azimuth(phi, delta, r.ah).deg()}};
               }});
  c.push_back({"sphastro.polaris", "culminations at 36d54m, delta 89 deg", [] {
                 const auto k = culmination_altitudes(Angle::dms(36, 54), deg(89));
                 return Values{{"h1_deg", k.upper.deg()}, {"h2_deg", k.lower.deg()}};
               }});
  c.push_back({"sphastro.shadow", "noon shadow at 47 deg", [] {
                 return Values{{"equinox", shadow_length(1.0, deg(47), Angle())},
                               {"HC_eq_HA", shadow_length(1.0, deg(47), deg(2))}};
               }});

  // ---- projmaps
  c.push_back({"utm.p1.pointA", "truncated UTM of A, Clarke 1880, lambda0 = 9 deg", [=] {
                 const auto p = utm_truncated_forward(clk, deg(9), gr(40.9193), gr(11.9656));
                 return Values{{"X", p.X}, {"Y", p.Y}};
               }});
  c.push_back({"utm.p1.pointB", "longitude of B on the parallel of A", [=] {
                 return Values{{"lambda_gr", utm_truncated_inverse_on_parallel(clk, deg(9), gr(40.9193), 160595.98).gr()}};
               }});
  c.push_back({"utm.a8", "size of the dl^8 northing term at 40 gr, dl = 1.23546 gr", [=] {
                 const double dl = gr(1.23546).rad();
                 return Values{{"term_m", utm_a8(clk, gr(40)) * std::pow(dl, 8)}};
               }});
  c.push_back({"projmaps.mercator", "Mercator R=1000 on tan(phi) = sin(lambda) at 2 gr", [] {
                 const Angle phi = gr(2);
                 const Angle lam = Angle::radians(std::asin(phi.tan()));
                 const auto p = mercator_forward(1000, phi, lam);
                 return Values{{"X", p.X}, {"Y", p.Y}};
               }});
  c.push_back({"projmaps.polar", "polar stereographic R=1000 at (30 deg, 50 deg)", [] {
                 const auto p = polar_stereo_forward(1000, deg(30), deg(50));
                 return Values{{"X", p.X}, {"Y", p.Y}};
               }});
  c.push_back({"projmaps.gauss", "Gauss sphere at 36 deg, image of 37 deg", [=] {
                 const auto g = gauss_sphere_fit(clk, deg(36));
                 return Values{{"c", g.c}, {"R", g.R_sphere}, {"psi37_deg", gauss_sphere_map(g, clk, deg(37), Angle()).phi.deg()}};
               }});
  c.push_back({"lambert.ex1", "Lambert Nord of A, bearing and reduced distance", [] {
                 const LambertConic nord_z(nord());
                 const auto p = nord_z.forward(gr(40.9193), gr(11.9656));
                 const Angle G = gisement(gr(55.7631), nord_z.convergence(gr(11.9656)), Angle::dmgr(1.52));
                 return Values{{"X", p.X}, {"Y", p.Y}, {"G_gr", G.gr()}, {"Dr", to_grid(5421.32, GridScale::cm_per_km(-9))}};
               }});
  c.push_back({"lambert.ex2", "slope distance back from a grid distance", [] {
                 return Values{{"Dp", slope_from_grid(5427.380, GridScale::relative(8e-5), 1000.0, 1200.0, kEarthR)}};
               }});
  c.push_back({"lambert.p1", "Lambert Probleme 1 chain (latitude and longitude read swapped)", [] {
                 const LambertConic nord_z(nord());
                 const auto red = reduce_rigorous({20130.858, 235.07, 507.75, std::nullopt, kEarthR});
                 const double dr = to_grid(red.de, GridScale::module(0.999850371));
                 const Angle phi = gr(41.44903), lam = gr(10.72453), lam_a = gr(10.72574);
                 const Angle azg = laplace_azimuth(gr(89.68499), lam, lam_a, phi);
                 const Angle gamma = nord_z.convergence(lam);
                 const Angle G = gisement(azg, gamma, gr(0.00188));
                 const auto B = plane_traverse({478022.43, 444702.22}, G, dr);
                 return Values{{"De", red.de}, {"Dr", dr}, {"Azg_gr", azg.gr()}, {"gamma_gr", gamma.gr()}, {"G_gr", G.gr()},
                               {"XB", B.X}, {"YB", B.Y}};
               }});
  c.push_back({"lambert.p2", "Lambert Probleme 2 chain, zone Sud", [] {
                 const LambertConic sud_z(sud());
                 const auto red = reduce_rigorous({16483.873, 1319.79, 1025.34, std::nullopt, kEarthR});
                 const double dr = to_grid(red.de, GridScale::cm_per_km(-14));
                 const Angle gamma = sud_z.convergence(gr(9.3474734));
                 const Angle G = gisement(gr(297.56225), gamma, Angle::dmgr(-13.7));
                 const auto B = plane_traverse({363044.79, 407020.09}, G, dr);
                 const auto geo = sud_z.inverse(B);
                 return Values{{"De", red.de}, {"Dr", dr}, {"gamma_gr", gamma.gr()}, {"G_gr", G.gr()}, {"XB", B.X}, {"YB", B.Y},
                               {"phiB_gr", geo.phi.gr()}, {"lambdaB_gr", geo.lambda.gr()}};
               }});

  // ---- reduce
  c.push_back({"reduce.ex1", "Exercice 1 reductions", [] {
                 const DistanceObservation o{20130.858, 235.07, 507.75, std::nullopt, kEarthR};
                 const auto r = reduce_rigorous(o);
                 return Values{{"D0", r.d0}, {"De", r.de}, {"De_corr", reduce_by_corrections(o).de},
                               {"Dr", to_grid(r.de, GridScale::module(0.999850371))}};
               }});
  c.push_back({"reduce.ex2", "Exercice 2: altitude and site-angle paths", [] {
                 const DistanceObservation o{15498.823, 128.26, 231.84, gr(0.3523), kEarthR};
                 const auto r = reduce_rigorous(o);
                 const auto s = reduce_site_angle(o);
                 const double de = 0.5 * (r.de + s.de);
                 return Values{{"D0", r.d0}, {"D0_site", s.d0}, {"De_mean", de}, {"Dr", to_grid(de, GridScale::module(0.999648744))}};
               }});
  c.push_back({"reduce.ex3", "Exercice 3 reductions", [] {
                 const auto r = reduce_rigorous({16483.873, 1319.79, 1025.34, std::nullopt, kEarthR});
                 return Values{{"De", r.de}, {"Dr", to_grid(r.de, GridScale::cm_per_km(-14))}};
               }});

  // ---- orbits
  c.push_back({"orbits.p1", "satellite 1100/800 km", [] {
                 const auto o = orbit_from_apsides(1100e3, 800e3, 6371000.0);
                 return Values{{"a", o.a}, {"e", o.e}, {"T", period(o)}};
               }});
  c.push_back({"orbits.p1.pass", "vertical pass at 812 km", [] {
                 const auto o = orbit_from_apsides(1100e3, 800e3, 6371000.0);
                 const Angle E = eccentric_anomaly_at_radius(o, 6371000.0 + 812000.0);
                 const Angle nu = anomaly_convert(AnomalyKind::eccentric, AnomalyKind::true_anomaly, E, o.e);
                 return Values{{"E_rad", E.rad()}, {"nu_rad", nu.rad()}, {"t", time_since_perigee(o, nu)}};
               }});
  c.push_back({"orbits.kepler", "Kepler equation M = 1, e = 0.0205",
               [] { return Values{{"E_rad", kepler_solve(Angle::radians(1.0), 0.0205).rad()}}; }});
  c.push_back({"orbits.anomaly", "true anomaly at E = pi/2, e = 0.5", [] {
                 return Values{{"nu_rad", anomaly_convert(AnomalyKind::eccentric, AnomalyKind::true_anomaly, Angle::radians(kPi / 2), 0.5).rad()}};
               }});
  c.push_back({"orbits.halley", "Halley's comet from its apsidal radii", [] {
                 const double G = 6.672e-11, M = 1.9891e30;
                 const auto o = orbit_from_radii(0.53 * kAstronomicalUnit, 35.1 * kAstronomicalUnit, G * M);
                 return Values{{"e", o.e}, {"ratio", apsidal_ratio(o.e)}, {"T_years", period(o) / (365.25 * 86400)}};
               }});
  c.push_back({"orbits.geo", "period at 42164 km", [] {
                 return Values{{"T", period({42164e3, 0.0, kGmEarth})}};
               }});

  // ---- lsq
  c.push_back({"lsq.p5.solution", "Probleme 5 solution from the printed matrices", [] {
                 const auto r = solve_wls(p5_printed());
                 return Values{{"X1", r.X(0)}, {"X2", r.X(1)}, {"X3", r.X(2)}};
               }});
  c.push_back({"lsq.p5.normal", "normal matrix recomputed from the printed A and P", [] {
                 const auto r = solve_wls(p5_printed());
                 return Values{{"N11", r.N(0, 0)}, {"N12", r.N(0, 1)}, {"N13", r.N(0, 2)},
                               {"N22", r.N(1, 1)}, {"N23", r.N(1, 2)}, {"N33", r.N(2, 2)}};
               }});
  c.push_back({"lsq.p5.rhs", "right-hand side of the angle-A row from the raw data", [] {
                 const Angle A = gr(63.042), C = gr(37.008);
                 const double a0 = 964.8, b0 = 1155.0, c0 = a0 * C.sin() / A.sin();
                 return Values{{"L3", triangle_angle_rhs(a0, b0, c0, A) * 2000 / kPi}};
               }});
  c.push_back({"lsq.aneroid", "aneroid calibration", [] {
                 const auto r = linear_calibration({6, 10, 14, 18}, {761.3, 759.1, 758.4, 763.1}, {762.3, 759.5, 758.7, 763.0}, 0.14);
                 return Values{{"alpha", r.X(0)}, {"gamma", r.X(1)}, {"s2", r.s2},
                               {"sigma_alpha", std::sqrt(r.cov(0, 0))}};
               }});
  c.push_back({"lsq.level.p2", "leveling network, A fixed at 3.048 m", [] {
                 const auto r = adjust_leveling(leveling_p2(), {{"A", 3.048}}, 2.0);
                 return Values{{"HB", r.heights.at("B")}, {"HC", r.heights.at("C")}, {"HD", r.heights.at("D")},
                               {"sB", r.sigma.at("B")}, {"sC", r.sigma.at("C")}, {"sD", r.sigma.at("D")},
                               {"sCD", r.sigma_difference("C", "D")}, {"mm_per_km", r.mm_per_km}};
               }});
  c.push_back({"lsq.level.p1", "quadrilateral leveling, A fixed at 0", [] {
                 const auto r = adjust_leveling(leveling_p1(), {{"A", 0.0}});
                 return Values{{"HB", r.heights.at("B")}, {"HC", r.heights.at("C")}, {"HD", r.heights.at("D")}, {"s2", r.fit.s2}};
               }});
  c.push_back({"lsq.triangle.ex5", "compensated triangle", [] {
                 const auto r = adjust_triangle(triangle_ex5());
                 return Values{{"a", r.a}, {"b", r.b}, {"c", r.c}, {"A_gr", r.A.gr()}, {"B_gr", r.B.gr()}, {"C_gr", r.C.gr()},
                               {"s2", r.s2}, {"w_A", r.weights(3)}, {"w_a", r.weights(0)}};
               }});
  c.push_back({"lsq.directions.p1", "quadrilateral directions, condition method", [] {
                 const auto r = adjust_directions(quadrilateral(), Angle::dmgr(6.2));
                 const double u = Angle::dmgr(1).rad();
                 return Values{{"s2_dmgr2", r.s2 / (u * u)}, {"s2_ratio", r.s2_ratio}, {"w_CBA", r.angle_weight("B", "C", "A")},
                               {"CBA_gr", r.angle("B", "C", "A").gr()}, {"BCD_gr", r.angle("C", "B", "D").gr()}};
               }});
  c.push_back({"lsq.newton", "Newton from (2, 0)", [] {
                 const auto r = newton_minimize(newton_fixture(), VectorXd((VectorXd(2) << 2.0, 0.0).finished()));
                 return Values{{"u", r.x(0)}, {"v", r.x(1)}};
               }});
  c.push_back({"lsq.bw.fit", "Bursa-Wolf fit on the seven common points", [] {
                 const auto f = bursa_wolf_fit(bursa_wolf_common());
                 const auto& p = f.params;
                 return Values{{"tx", p.tx}, {"ty", p.ty}, {"tz", p.tz}, {"scale_ppm", p.scale_ppm},
                               {"rx", p.rx}, {"ry", p.ry}, {"rz", p.rz}, {"rms", f.rms}};
               }});
  c.push_back({"lsq.bw.apply", "Bursa-Wolf transform of points A-D", [] {
                 const auto f = bursa_wolf_fit(bursa_wolf_common());
                 Values v;
                 for (const auto& [name, pt] : bursa_wolf_targets()) {
                   const auto q = bursa_wolf_apply(f.params, pt);
                   v.emplace_back(name + "_x", q.x);
                   v.emplace_back(name + "_y", q.y);
                   v.emplace_back(name + "_z", q.z);
                 }
                 return v;
               }});
  return c;
}

inline std::vector<GoldenRow> load_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open golden file '" + path + "'");
  std::vector<GoldenRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    if (f.size() != 5) throw ParseError("golden row needs id,key,expected,tolerance,provenance: " + line);
    if (f[0] == "id") continue;
    rows.push_back({f[0], f[1], ::geodesy::detail::to_double(f[2]), ::geodesy::detail::to_double(f[3]), f[4]});
  }
  return rows;
}

struct KeyOutcome {
  std::string key;
  double expected = 0, actual = 0, tolerance = 0;
  std::string provenance;
  bool pass = false;
};

struct CaseOutcome {
  std::string id;
  bool pass = false;
  std::string error;
  std::vector<KeyOutcome> keys;
  double ms = 0;
};

inline CaseOutcome run_case(const FixtureCase& fc, const std::vector<GoldenRow>& golden) {
  CaseOutcome out;
  out.id = fc.id;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Values vals = fc.run();
    std::map<std::string, double> got(vals.begin(), vals.end());
    bool any = false;
    out.pass = true;
    for (const auto& g : golden) {
      if (g.id != fc.id) continue;
      any = true;
      KeyOutcome k{g.key, g.expected, 0, g.tolerance, g.provenance, false};
      if (auto it = got.find(g.key); it != got.end()) {
        k.actual = it->second;
        k.pass = std::abs(k.actual - k.expected) <= k.tolerance;
      }
      out.pass = out.pass && k.pass;
      out.keys.push_back(k);
    }
    if (!any) {
      out.pass = false;
      out.error = "no golden values";
    }
  } catch (const std::exception& e) {
    out.pass = false;
    out.error = e.what();
  }
  out.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace geodesy::fixtures
