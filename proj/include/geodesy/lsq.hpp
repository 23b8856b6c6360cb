#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "geodesy/angle.hpp"
#include "geodesy/error.hpp"
#include "geodesy/geocore.hpp"

namespace geodesy {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct LinearModel {
  MatrixXd A;
  VectorXd L;
  MatrixXd P;  // n x n; use weights_diag() for the common diagonal case

  static MatrixXd weights_diag(const VectorXd& p) { return p.asDiagonal(); }
  static MatrixXd identity(Eigen::Index n) { return MatrixXd::Identity(n, n); }
};

struct AdjustmentResult {
  VectorXd X;
  VectorXd V;  // A X - L
  MatrixXd N;
  double s2 = 0.0;
  MatrixXd cov;  // s2 N^-1
  MatrixXd Qxx;  // N^-1
  int dof = 0;
  double cond = 1.0;  // of the equilibrated normal matrix
  std::vector<std::string> warnings;

  double vtpv(const MatrixXd& P) const { return V.dot(P * V); }
};

inline constexpr double kPivotThreshold = 1e-12;
inline constexpr double kConditionWarning = 1e12;

namespace detail {

inline std::string null_space_hint(const MatrixXd& Ns) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(Ns);
  const VectorXd v = es.eigenvectors().col(0);
  std::ostringstream os;
  os << "null-space direction involves unknowns";
  const double vmax = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > 0.1 * vmax) os << " #" << i;
  return os.str();
}

/// Factors N after Jacobi equilibration. Fills Qxx and cond, throws on rank loss.
inline MatrixXd inverse_normal(const MatrixXd& N, double& cond, std::vector<std::string>& warnings) {
  const Eigen::Index u = N.rows();
  VectorXd d(u);
  for (Eigen::Index i = 0; i < u; ++i) {
    if (!(N(i, i) > 0.0))
      throw SingularError("singular normal matrix: unknown #" + std::to_string(i) + " is not observed");
    d(i) = 1.0 / std::sqrt(N(i, i));
  }
  const MatrixXd Ns = d.asDiagonal() * N * d.asDiagonal();
  Eigen::LDLT<MatrixXd> ldlt(Ns);
  const VectorXd piv = ldlt.vectorD();
  const double scale = std::max(1.0, piv.cwiseAbs().maxCoeff());
  if (ldlt.info() != Eigen::Success || piv.minCoeff() < kPivotThreshold * scale)
    throw SingularError("singular normal matrix (rank deficient design); " + null_space_hint(Ns));
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(Ns, Eigen::EigenvaluesOnly);
  cond = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
  if (cond > kConditionWarning) warnings.push_back("ill-conditioned normal matrix, cond = " + std::to_string(cond));
  const MatrixXd Qs = ldlt.solve(MatrixXd::Identity(u, u));
  return d.asDiagonal() * Qs * d.asDiagonal();
}

}  // namespace detail

/// Weighted Gauss-Markov solve of A X = L + V.
inline AdjustmentResult solve_wls(const LinearModel& m) {
  const Eigen::Index n = m.A.rows(), u = m.A.cols();
  if (m.L.size() != n || m.P.rows() != n || m.P.cols() != n) throw DomainError("model dimensions disagree");
  if (n < u) throw DomainError("fewer observations than unknowns");
  if (!m.P.isApprox(m.P.transpose())) throw DomainError("weight matrix is not symmetric");
  AdjustmentResult r;
  r.N = m.A.transpose() * m.P * m.A;
  r.Qxx = detail::inverse_normal(r.N, r.cond, r.warnings);
  r.X = r.Qxx * (m.A.transpose() * m.P * m.L);
  r.V = m.A * r.X - m.L;
  r.dof = static_cast<int>(n - u);
  if (r.dof > 0) {
    r.s2 = std::max(0.0, r.V.dot(m.P * r.V)) / r.dof;
  } else {
    r.warnings.push_back("no redundancy: variance factor undefined, reported as 0");
  }
  r.cov = r.s2 * r.Qxx;
  return r;
}

/// Condition (correlate) adjustment: B (l + v) + w0 = 0, i.e. B v + w = 0 with w the misclosures.
struct ConditionResult {
  VectorXd V;
  VectorXd k;     // correlates
  MatrixXd Qvv;   // cofactor of residuals
  MatrixXd Qll;   // cofactor of adjusted observations
  double s2 = 0.0;
  int dof = 0;
};

inline ConditionResult condition_adjust(const MatrixXd& B, const VectorXd& w, const MatrixXd& P) {
  const Eigen::Index r = B.rows(), n = B.cols();
  if (w.size() != r || P.rows() != n) throw DomainError("condition model dimensions disagree");
  const MatrixXd Q = P.inverse();
  const MatrixXd M = B * Q * B.transpose();
  Eigen::LDLT<MatrixXd> ldlt(M);
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().minCoeff() < kPivotThreshold * std::max(1.0, ldlt.vectorD().maxCoeff()))
    throw SingularError("dependent condition equations");
  ConditionResult c;
  c.k = -ldlt.solve(w);
  c.V = Q * B.transpose() * c.k;
  c.Qvv = Q * B.transpose() * ldlt.solve(B * Q);
  c.Qll = Q - c.Qvv;
  c.dof = static_cast<int>(r);
  c.s2 = r > 0 ? c.V.dot(P * c.V) / r : 0.0;
  return c;
}

// Linear calibration -------------------------------------------------------

/// Fit D - d = alpha t + gamma for a reading d against reference D at times t.
inline AdjustmentResult linear_calibration(const std::vector<double>& t, const std::vector<double>& d,
                                           const std::vector<double>& D, double sigma) {
  if (t.size() != d.size() || t.size() != D.size()) throw DomainError("calibration columns differ in length");
  const auto n = static_cast<Eigen::Index>(t.size());
  LinearModel m{MatrixXd(n, 2), VectorXd(n), MatrixXd::Identity(n, n) / (sigma * sigma)};
  for (Eigen::Index i = 0; i < n; ++i) {
    m.A(i, 0) = t[i];
    m.A(i, 1) = 1.0;
    m.L(i) = D[i] - d[i];
  }
  return solve_wls(m);
}

// Leveling -----------------------------------------------------------------

struct LevelingObs {
  std::string from, to;
  double dh = 0.0;    // H_to - H_from, m
  double dist = 1.0;  // km; weight 1/dist
};

struct LevelingResult {
  std::map<std::string, double> heights;
  std::map<std::string, double> sigma;  // a posteriori, m; 0 for fixed nodes
  std::optional<std::map<std::string, double>> sigma_apriori;
  std::vector<std::string> unknowns;
  AdjustmentResult fit;
  double mm_per_km = 0.0;  // 1000 sqrt(s2): unit weight is one km of leveling

  double sigma_difference(const std::string& a, const std::string& b) const {
    const auto ia = index(a), ib = index(b);
    double q = 0.0;
    if (ia) q += fit.cov(*ia, *ia);
    if (ib) q += fit.cov(*ib, *ib);
    if (ia && ib) q -= 2 * fit.cov(*ia, *ib);
    return std::sqrt(std::max(0.0, q));
  }

 private:
  std::optional<Eigen::Index> index(const std::string& n) const {
    for (size_t i = 0; i < unknowns.size(); ++i)
      if (unknowns[i] == n) return static_cast<Eigen::Index>(i);
    if (!heights.count(n)) throw DomainError("unknown leveling node '" + n + "'");
    return std::nullopt;
  }
};

inline LevelingResult adjust_leveling(const std::vector<LevelingObs>& obs, const std::map<std::string, double>& fixed,
                                      std::optional<double> precision_mm_per_km = std::nullopt) {
  if (fixed.empty()) throw DomainError("leveling network needs at least one fixed node");
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& o : obs) {
    if (!(o.dist > 0.0)) throw DomainError("leveling distance must be positive");
    adj[o.from].push_back(o.to);
    adj[o.to].push_back(o.from);
  }
  std::set<std::string> seen;
  std::queue<std::string> q;
  for (const auto& [n, h] : fixed) {
    seen.insert(n);
    q.push(n);
  }
  while (!q.empty()) {
    const auto n = q.front();
    q.pop();
    for (const auto& m : adj[n])
      if (seen.insert(m).second) q.push(m);
  }
  LevelingResult res;
  for (const auto& [n, nb] : adj) {
    if (!seen.count(n)) throw DomainError("node '" + n + "' is not connected to a fixed node");
    if (!fixed.count(n)) res.unknowns.push_back(n);
  }
  std::map<std::string, Eigen::Index> col;
  for (size_t i = 0; i < res.unknowns.size(); ++i) col[res.unknowns[i]] = static_cast<Eigen::Index>(i);

  const auto n = static_cast<Eigen::Index>(obs.size());
  const auto u = static_cast<Eigen::Index>(res.unknowns.size());
  LinearModel m{MatrixXd::Zero(n, u), VectorXd(n), MatrixXd::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& o = obs[static_cast<size_t>(i)];
    double l = o.dh;
    if (auto it = fixed.find(o.to); it != fixed.end()) l -= it->second; else m.A(i, col[o.to]) += 1.0;
    if (auto it = fixed.find(o.from); it != fixed.end()) l += it->second; else m.A(i, col[o.from]) -= 1.0;
    m.L(i) = l;
    m.P(i, i) = 1.0 / o.dist;
  }
  res.fit = solve_wls(m);
  for (const auto& [k, h] : fixed) {
    res.heights[k] = h;
    res.sigma[k] = 0.0;
  }
  for (Eigen::Index j = 0; j < u; ++j) {
    res.heights[res.unknowns[j]] = res.fit.X(j);
    res.sigma[res.unknowns[j]] = std::sqrt(res.fit.cov(j, j));
  }
  res.mm_per_km = 1000.0 * std::sqrt(res.fit.s2);
  if (precision_mm_per_km) {
    const double s0 = *precision_mm_per_km / 1000.0;
    std::map<std::string, double> sa;
    for (const auto& [k, h] : fixed) sa[k] = 0.0;
    for (Eigen::Index j = 0; j < u; ++j) sa[res.unknowns[j]] = s0 * std::sqrt(res.fit.Qxx(j, j));
    res.sigma_apriori = sa;
  }
  return res;
}

/// Reads `from,to,dh,dist` rows; '#' comments and a header row are skipped.
inline std::vector<LevelingObs> load_leveling(std::istream& in) {
  std::vector<LevelingObs> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    if (f.size() < 3) throw ParseError("leveling row needs from,to,dh[,dist]: " + line);
    if (f[0] == "from") continue;
    LevelingObs o{f[0], f[1], detail::to_double(f[2]), f.size() > 3 ? detail::to_double(f[3]) : 1.0};
    out.push_back(o);
  }
  return out;
}

// Plane triangle ---------------------------------------------------------------

struct TriangleObservations {
  Angle A, B, C;
  Angle sA, sB, sC;  // standard deviations
  double a = 0, b = 0, c = 0;
  double sa = 0, sb = 0, sc = 0;  // m
};

struct TriangleAdjustment {
  Angle A, B, C;
  double a = 0, b = 0, c = 0;
  VectorXd residuals;      // a, b, c in mm; A, B, C in dmgr
  MatrixXd Qll;            // cofactor of adjusted observations, same order and units
  VectorXd weights;        // 1 / diag(Qll)
  double s2 = 0.0;         // variance factor (sigma0 = 1)
  int iterations = 0;
  AdjustmentResult fit;
};

namespace detail {

inline Eigen::Vector3d triangle_angles(double a, double b, double c) {
  auto ang = [](double x, double y, double z) { return std::acos(std::clamp((y * y + z * z - x * x) / (2 * y * z), -1.0, 1.0)); };
  return {ang(a, b, c), ang(b, c, a), ang(c, a, b)};
}

// Partial derivatives of the opposite-angle function acos((y^2+z^2-x^2)/(2yz)).
inline Eigen::Vector3d angle_gradient(double x, double y, double z) {
  const double Aang = std::acos(std::clamp((y * y + z * z - x * x) / (2 * y * z), -1.0, 1.0));
  const double s = std::sin(Aang);
  return {x / (y * z * s), -(x * x + y * y - z * z) / (2 * y * y * z * s), -(x * x + z * z - y * y) / (2 * y * z * z * s)};
}

}  // namespace detail

/// Right-hand side of the linearized angle row for A: (b^2+c^2-a^2 - 2bc cos A) / (2bc sin A), rad.
inline double triangle_angle_rhs(double a0, double b0, double c0, Angle A) {
  return (b0 * b0 + c0 * c0 - a0 * a0 - 2 * b0 * c0 * A.cos()) / (2 * b0 * c0 * A.sin());
}

/// Gauss-Newton on the unknown sides; observations are the three sides and
/// three angles. Sides are carried in mm and angles in dmgr, weights 1/sigma^2.
inline TriangleAdjustment adjust_triangle(const TriangleObservations& o, int max_iter = 20, double tol = 1e-10) {
  const double mm = 1000.0;
  const double dm = 1.0 / Angle::dmgr(1).rad();  // rad -> dmgr
  const VectorXd lobs = (VectorXd(6) << o.a * mm, o.b * mm, o.c * mm, o.A.rad() * dm, o.B.rad() * dm, o.C.rad() * dm).finished();
  const VectorXd sig = (VectorXd(6) << o.sa * mm, o.sb * mm, o.sc * mm, o.sA.dmgr(), o.sB.dmgr(), o.sC.dmgr()).finished();
  for (Eigen::Index i = 0; i < 6; ++i)
    if (!(sig(i) > 0)) throw DomainError("triangle observation sigmas must be positive");
  const MatrixXd P = sig.cwiseInverse().cwiseAbs2().asDiagonal();
  Eigen::Vector3d x(o.a, o.b, o.c);
  TriangleAdjustment out;
  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::Vector3d ang = detail::triangle_angles(x(0), x(1), x(2));
    MatrixXd A = MatrixXd::Zero(6, 3);
    A(0, 0) = A(1, 1) = A(2, 2) = 1.0;
    const Eigen::Vector3d gA = detail::angle_gradient(x(0), x(1), x(2));
    const Eigen::Vector3d gB = detail::angle_gradient(x(1), x(2), x(0));
    const Eigen::Vector3d gC = detail::angle_gradient(x(2), x(0), x(1));
    // unknown increments are in mm; angle rows in dmgr
    A.row(3) << gA(0), gA(1), gA(2);
    A.row(4) << gB(2), gB(0), gB(1);
    A.row(5) << gC(1), gC(2), gC(0);
    A.bottomRows(3) *= dm / mm;
    VectorXd comp(6);
    comp << x(0) * mm, x(1) * mm, x(2) * mm, ang(0) * dm, ang(1) * dm, ang(2) * dm;
    LinearModel m{A, lobs - comp, P};
    out.fit = solve_wls(m);
    x += out.fit.X / mm;
    out.iterations = it;
    if (out.fit.X.norm() < tol) break;
    if (it == max_iter) throw ConvergenceError("triangle adjustment did not converge in " + std::to_string(max_iter) + " iterations");
  }
  const Eigen::Vector3d ang = detail::triangle_angles(x(0), x(1), x(2));
  out.a = x(0);
  out.b = x(1);
  out.c = x(2);
  out.A = Angle::radians(ang(0));
  out.B = Angle::radians(ang(1));
  out.C = Angle::radians(ang(2));
  VectorXd comp(6);
  comp << x(0) * mm, x(1) * mm, x(2) * mm, ang(0) * dm, ang(1) * dm, ang(2) * dm;
  out.residuals = comp - lobs;
  // the last linearization is taken at the previous iterate; rebuild at the solution
  MatrixXd A = MatrixXd::Zero(6, 3);
  A(0, 0) = A(1, 1) = A(2, 2) = 1.0;
  const Eigen::Vector3d gA = detail::angle_gradient(x(0), x(1), x(2));
  const Eigen::Vector3d gB = detail::angle_gradient(x(1), x(2), x(0));
  const Eigen::Vector3d gC = detail::angle_gradient(x(2), x(0), x(1));
  A.row(3) << gA(0), gA(1), gA(2);
  A.row(4) << gB(2), gB(0), gB(1);
  A.row(5) << gC(1), gC(2), gC(0);
  A.bottomRows(3) *= dm / mm;
  const MatrixXd N = A.transpose() * P * A;
  out.Qll = A * N.inverse() * A.transpose();
  out.weights = out.Qll.diagonal().cwiseInverse();
  out.s2 = out.residuals.dot(P * out.residuals) / 3.0;
  return out;
}

// Directions -------------------------------------------------------------------

struct DirectionReading {
  std::string target;
  Angle value;
};

struct DirectionSet {
  std::string station;
  std::vector<DirectionReading> readings;
};

struct DirectionAdjustment {
  std::vector<DirectionSet> adjusted;
  VectorXd residuals;  // rad, in reading order
  MatrixXd Qll;        // cofactor of adjusted readings, direction weight = 1
  double s2 = 0.0;     // rad^2, estimate of the direction variance
  double s2_ratio = 0.0;  // s2 / sigma^2
  int dof = 0;
  std::vector<std::pair<std::string, std::string>> index;  // (station, target) per reading

  Eigen::Index position(const std::string& st, const std::string& tg) const {
    for (size_t i = 0; i < index.size(); ++i)
      if (index[i].first == st && index[i].second == tg) return static_cast<Eigen::Index>(i);
    throw DomainError("no reading " + st + " -> " + tg);
  }

  Angle reading(const std::string& st, const std::string& tg) const {
    for (const auto& s : adjusted)
      if (s.station == st)
        for (const auto& r : s.readings)
          if (r.target == tg) return r.value;
    throw DomainError("no reading " + st + " -> " + tg);
  }

  /// Adjusted angle at `st` from `from` to `to` (clockwise), in [0, 2pi).
  Angle angle(const std::string& st, const std::string& from, const std::string& to) const {
    return (reading(st, to) - reading(st, from)).normalized_positive();
  }

  /// Weight of the adjusted angle, relative to a single direction of weight 1.
  double angle_weight(const std::string& st, const std::string& from, const std::string& to) const {
    VectorXd f = VectorXd::Zero(Qll.rows());
    f(position(st, to)) = 1.0;
    f(position(st, from)) = -1.0;
    return 1.0 / f.dot(Qll * f);
  }
};

namespace detail {

struct DirectionIndex {
  std::vector<std::pair<std::string, std::string>> obs;
  std::vector<double> value;
  std::vector<std::string> stations;
};

inline DirectionIndex index_directions(const std::vector<DirectionSet>& sets) {
  DirectionIndex d;
  std::set<std::string> st;
  for (const auto& s : sets) {
    if (!st.insert(s.station).second) throw DomainError("station '" + s.station + "' listed twice");
    d.stations.push_back(s.station);
    for (const auto& r : s.readings) {
      d.obs.emplace_back(s.station, r.target);
      d.value.push_back(r.value.rad());
    }
  }
  return d;
}

inline std::string line_key(const std::string& a, const std::string& b) { return a < b ? a + "|" + b : b + "|" + a; }

inline double wrap_signed(double x) {
  return Angle::radians(x).normalized_signed().rad();
}

inline DirectionAdjustment finish_directions(const std::vector<DirectionSet>& sets, const DirectionIndex& d,
                                             const VectorXd& v, const MatrixXd& Qll, int dof, Angle sigma) {
  DirectionAdjustment out;
  out.index = d.obs;
  out.residuals = v;
  out.Qll = Qll;
  out.dof = dof;
  out.s2 = dof > 0 ? v.squaredNorm() / dof : 0.0;
  out.s2_ratio = out.s2 / (sigma.rad() * sigma.rad());
  out.adjusted = sets;
  Eigen::Index k = 0;
  for (auto& s : out.adjusted)
    for (auto& r : s.readings) r.value = r.value + Angle::radians(v(k++));
  return out;
}

}  // namespace detail

/// Parametric direction adjustment in the plane: reading(S -> T) = az(ST) - orientation(S),
/// az(TS) = az(ST) + pi. The datum fixes the first station's orientation to zero.
inline DirectionAdjustment adjust_directions_parametric(const std::vector<DirectionSet>& sets, Angle sigma) {
  const auto d = detail::index_directions(sets);
  std::map<std::string, Eigen::Index> line_col, orient_col;
  std::vector<std::string> lines;
  for (const auto& [s, t] : d.obs) {
    const auto k = detail::line_key(s, t);
    if (!line_col.count(k)) {
      line_col[k] = static_cast<Eigen::Index>(lines.size());
      lines.push_back(k);
    }
  }
  const auto nl = static_cast<Eigen::Index>(lines.size());
  for (size_t i = 1; i < d.stations.size(); ++i) orient_col[d.stations[i]] = nl + static_cast<Eigen::Index>(i - 1);
  const Eigen::Index u = nl + static_cast<Eigen::Index>(d.stations.size()) - 1;
  const auto n = static_cast<Eigen::Index>(d.obs.size());
  if (n <= u) throw DomainError("direction network has no redundancy");

  // approximate values by propagation from the datum station
  std::map<std::string, double> orient{{d.stations.front(), 0.0}};
  std::map<std::string, double> az;  // keyed by line, azimuth from the lexicographically smaller end
  auto line_az = [&](const std::string& s, const std::string& t, double v) {
    return s < t ? v : v - kPi;
  };
  for (bool progress = true; progress;) {
    progress = false;
    for (size_t i = 0; i < d.obs.size(); ++i) {
      const auto& [s, t] = d.obs[i];
      const auto k = detail::line_key(s, t);
      if (orient.count(s) && !az.count(k)) {
        az[k] = line_az(s, t, d.value[i] + orient[s]);
        progress = true;
      } else if (!orient.count(s) && az.count(k)) {
        const double a = s < t ? az[k] : az[k] + kPi;
        orient[s] = a - d.value[i];
        progress = true;
      }
    }
  }
  if (orient.size() != d.stations.size() || az.size() != lines.size())
    throw DomainError("direction network is not connected");

  LinearModel m{MatrixXd::Zero(n, u), VectorXd(n), MatrixXd::Identity(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& [s, t] = d.obs[static_cast<size_t>(i)];
    const auto k = detail::line_key(s, t);
    const double a0 = s < t ? az[k] : az[k] + kPi;
    m.A(i, line_col[k]) = 1.0;
    if (orient_col.count(s)) m.A(i, orient_col[s]) = -1.0;
    m.L(i) = detail::wrap_signed(d.value[static_cast<size_t>(i)] - (a0 - orient[s]));
  }
  const auto fit = solve_wls(m);
  const MatrixXd Qll = m.A * fit.Qxx * m.A.transpose();
  return detail::finish_directions(sets, d, fit.V, Qll, fit.dof, sigma);
}

/// Condition-method direction adjustment: one closure per independent
/// triangle whose three vertices observe each other; plane closure to pi.
inline DirectionAdjustment adjust_directions(const std::vector<DirectionSet>& sets, Angle sigma) {
  const auto d = detail::index_directions(sets);
  const auto n = static_cast<Eigen::Index>(d.obs.size());
  auto find = [&](const std::string& s, const std::string& t) -> std::optional<Eigen::Index> {
    for (size_t i = 0; i < d.obs.size(); ++i)
      if (d.obs[i].first == s && d.obs[i].second == t) return static_cast<Eigen::Index>(i);
    return std::nullopt;
  };
  std::set<std::string> lines;
  for (const auto& [s, t] : d.obs) lines.insert(detail::line_key(s, t));
  const int expected = static_cast<int>(n) - (static_cast<int>(lines.size()) + static_cast<int>(d.stations.size()) - 1);

  std::vector<VectorXd> rows;
  std::vector<double> misclosure;
  const auto& S = d.stations;
  for (size_t i = 0; i < S.size(); ++i)
    for (size_t j = i + 1; j < S.size(); ++j)
      for (size_t k = j + 1; k < S.size(); ++k) {
        const std::string tri[3] = {S[i], S[j], S[k]};
        VectorXd row = VectorXd::Zero(n);
        double sum = 0.0;
        bool ok = true;
        for (int v = 0; v < 3 && ok; ++v) {
          const auto& at = tri[v];
          const auto p = find(at, tri[(v + 1) % 3]);
          const auto q = find(at, tri[(v + 2) % 3]);
          if (!p || !q) {
            ok = false;
            break;
          }
          double ang = Angle::radians(d.value[*q] - d.value[*p]).normalized_positive().rad();
          if (ang > kPi) {
            ang = 2 * kPi - ang;
            row(*p) += 1.0;
            row(*q) -= 1.0;
          } else {
            row(*q) += 1.0;
            row(*p) -= 1.0;
          }
          sum += ang;
        }
        if (!ok) continue;
        // keep only conditions independent of those already collected
        MatrixXd Bt(n, static_cast<Eigen::Index>(rows.size()) + 1);
        for (size_t r = 0; r < rows.size(); ++r) Bt.col(static_cast<Eigen::Index>(r)) = rows[r];
        Bt.col(Bt.cols() - 1) = row;
        if (Eigen::FullPivLU<MatrixXd>(Bt).rank() < Bt.cols()) continue;
        rows.push_back(row);
        misclosure.push_back(sum - kPi);
      }
  if (static_cast<int>(rows.size()) != expected)
    throw DomainError("inconsistent condition count: " + std::to_string(rows.size()) + " triangle closures for " +
                      std::to_string(expected) + " redundancies");
  MatrixXd B(static_cast<Eigen::Index>(rows.size()), n);
  VectorXd w(B.rows());
  for (Eigen::Index r = 0; r < B.rows(); ++r) {
    B.row(r) = rows[static_cast<size_t>(r)].transpose();
    w(r) = misclosure[static_cast<size_t>(r)];
  }
  const auto c = condition_adjust(B, w, MatrixXd::Identity(n, n));
  return detail::finish_directions(sets, d, c.V, c.Qll, c.dof, sigma);
}

// Newton minimization --------------------------------------------------------

struct NewtonProblem {
  std::function<double(const VectorXd&)> f;
  std::function<VectorXd(const VectorXd&)> grad;
  std::function<MatrixXd(const VectorXd&)> hess;
};

struct NewtonResult {
  VectorXd x;
  std::vector<VectorXd> path;  // x0, x1, ...
  int iterations = 0;
  std::vector<std::string> warnings;
};

inline NewtonResult newton_minimize(const NewtonProblem& p, const VectorXd& x0, double tol = 1e-12, int max_iter = 100) {
  NewtonResult r;
  VectorXd x = x0;
  r.path.push_back(x);
  for (int it = 1; it <= max_iter; ++it) {
    const MatrixXd H = p.hess(x);
    const VectorXd g = p.grad(x);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(H, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff(), lmax = es.eigenvalues().cwiseAbs().maxCoeff();
    Eigen::FullPivLU<MatrixXd> lu(H);
    if (!lu.isInvertible() || std::abs(H.determinant()) <= 1e-14 * std::pow(std::max(1.0, lmax), H.rows())) {
      std::ostringstream os;
      os << "singular Hessian at iteration " << it << ", x = (" << x.transpose() << "), det = " << H.determinant();
      throw SingularError(os.str());
    }
    if (lmin < 0) {
      std::ostringstream os;
      os << "indefinite Hessian at iteration " << it << ", x = (" << x.transpose() << ")";
      r.warnings.push_back(os.str());
    }
    const VectorXd step = lu.solve(g);
    x -= step;
    r.path.push_back(x);
    r.iterations = it;
    if (step.norm() <= tol * std::max(1.0, x.norm())) {
      r.x = x;
      return r;
    }
  }
  throw ConvergenceError("Newton minimization did not converge in " + std::to_string(max_iter) + " iterations");
}

// Gauss-Newton -----------------------------------------------------------------

struct GaussNewtonProblem {
  std::function<VectorXd(const VectorXd&)> zeta;
  std::function<MatrixXd(const VectorXd&)> jacobian;
  // second derivatives of each zeta_i, optional (needed for matrix_B)
  std::function<std::vector<MatrixXd>(const VectorXd&)> hessians;
};

struct GaussNewtonResult {
  VectorXd x;
  AdjustmentResult fit;  // linearized at the solution; fit.X is the last increment
  int iterations = 0;
};

/// Gram matrix g(X) = J^T P J.
inline MatrixXd gram_g(const GaussNewtonProblem& p, const VectorXd& x, const MatrixXd& P) {
  const MatrixXd J = p.jacobian(x);
  return J.transpose() * P * J;
}

/// B_ij = g_ij - <L - zeta(X), P d2 zeta / dXi dXj>.
inline MatrixXd matrix_B(const GaussNewtonProblem& p, const VectorXd& x, const VectorXd& L, const MatrixXd& P) {
  if (!p.hessians) throw DomainError("matrix B needs the second derivatives of zeta");
  MatrixXd B = gram_g(p, x, P);
  const VectorXd r = P * (L - p.zeta(x));
  const auto H = p.hessians(x);
  for (size_t i = 0; i < H.size(); ++i) B -= r(static_cast<Eigen::Index>(i)) * H[i];
  return B;
}

inline GaussNewtonResult gauss_newton(const GaussNewtonProblem& p, const VectorXd& L, const MatrixXd& P, const VectorXd& x0,
                                      double tol = 1e-12, int max_iter = 50) {
  GaussNewtonResult r;
  VectorXd x = x0;
  for (int it = 1; it <= max_iter; ++it) {
    LinearModel m{p.jacobian(x), L - p.zeta(x), P};
    r.fit = solve_wls(m);
    x += r.fit.X;
    r.iterations = it;
    if (r.fit.X.norm() <= tol * std::max(1.0, x.norm())) {
      LinearModel fin{p.jacobian(x), L - p.zeta(x), P};
      r.fit = solve_wls(fin);
      r.fit.V = p.zeta(x) - L;
      r.fit.s2 = r.fit.dof > 0 ? r.fit.V.dot(P * r.fit.V) / r.fit.dof : 0.0;
      r.fit.cov = r.fit.s2 * r.fit.Qxx;
      r.x = x;
      return r;
    }
  }
  throw ConvergenceError("Gauss-Newton did not converge in " + std::to_string(max_iter) + " iterations");
}

/// Planar trilateration with zeta_i = ((X1 - a_i)^2 + (X2 - b_i)^2) / 2 and L_i = D_i^2 / 2.
inline GaussNewtonProblem trilateration_problem(std::vector<Eigen::Vector2d> stations) {
  GaussNewtonProblem p;
  p.zeta = [stations](const VectorXd& x) {
    VectorXd z(static_cast<Eigen::Index>(stations.size()));
    for (size_t i = 0; i < stations.size(); ++i) z(static_cast<Eigen::Index>(i)) = 0.5 * (x.head<2>() - stations[i]).squaredNorm();
    return z;
  };
  p.jacobian = [stations](const VectorXd& x) {
    MatrixXd J(static_cast<Eigen::Index>(stations.size()), 2);
    for (size_t i = 0; i < stations.size(); ++i) J.row(static_cast<Eigen::Index>(i)) = (x.head<2>() - stations[i]).transpose();
    return J;
  };
  p.hessians = [n = stations.size()](const VectorXd&) { return std::vector<MatrixXd>(n, MatrixXd::Identity(2, 2)); };
  return p;
}

// Burša-Wolf -----------------------------------------------------------------

struct SevenParams {
  double tx = 0, ty = 0, tz = 0;  // m
  double scale_ppm = 0;           // (s - 1) * 1e6
  double rx = 0, ry = 0, rz = 0;  // rad, applied as +r x X
};

struct CommonPoint {
  std::string name;
  CartesianCoord s1, s2;
};

inline CartesianCoord bursa_wolf_apply(const SevenParams& p, const CartesianCoord& c) {
  const double s = p.scale_ppm * 1e-6;
  return {c.x + p.tx + s * c.x + (p.ry * c.z - p.rz * c.y),
          c.y + p.ty + s * c.y + (p.rz * c.x - p.rx * c.z),
          c.z + p.tz + s * c.z + (p.rx * c.y - p.ry * c.x)};
}

struct BursaWolfFit {
  SevenParams params;
  AdjustmentResult fit;  // on centred coordinates, unknowns (t_c, s, r)
  double rms = 0.0;      // residual RMS per coordinate, m
};

/// Linearized similarity fit; solved on centroid-reduced coordinates for conditioning.
inline BursaWolfFit bursa_wolf_fit(const std::vector<CommonPoint>& pts) {
  if (pts.size() < 3) throw DomainError("Bursa-Wolf fit needs at least 3 common points");
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& p : pts) c += Eigen::Vector3d(p.s1.x, p.s1.y, p.s1.z);
  c /= static_cast<double>(pts.size());
  const auto n = static_cast<Eigen::Index>(3 * pts.size());
  LinearModel m{MatrixXd::Zero(n, 7), VectorXd(n), MatrixXd::Identity(n, n)};
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(3 * i);
    const double X = pts[i].s1.x - c(0), Y = pts[i].s1.y - c(1), Z = pts[i].s1.z - c(2);
    m.A.row(r) << 1, 0, 0, X, 0, Z, -Y;
    m.A.row(r + 1) << 0, 1, 0, Y, -Z, 0, X;
    m.A.row(r + 2) << 0, 0, 1, Z, Y, -X, 0;
    m.L(r) = pts[i].s2.x - pts[i].s1.x;
    m.L(r + 1) = pts[i].s2.y - pts[i].s1.y;
    m.L(r + 2) = pts[i].s2.z - pts[i].s1.z;
  }
  BursaWolfFit out;
  try {
    out.fit = solve_wls(m);
  } catch (const SingularError& e) {
    throw SingularError(std::string("degenerate common-point geometry: ") + e.what());
  }
  const VectorXd& X = out.fit.X;
  const double s = X(3);
  const Eigen::Vector3d r(X(4), X(5), X(6));
  const Eigen::Vector3d t = Eigen::Vector3d(X(0), X(1), X(2)) - s * c - r.cross(c);
  out.params = {t(0), t(1), t(2), s * 1e6, r(0), r(1), r(2)};
  out.rms = std::sqrt(out.fit.V.squaredNorm() / static_cast<double>(n));
  return out;
}

/// Reads `name,x1,y1,z1,x2,y2,z2` rows; '#' comments and a header row are skipped.
inline std::vector<CommonPoint> load_common_points(std::istream& in) {
  std::vector<CommonPoint> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    if (f.size() != 7) throw ParseError("common-point row needs 7 fields: " + line);
    if (f[0] == "name") continue;
    using detail::to_double;
    out.push_back({f[0], {to_double(f[1]), to_double(f[2]), to_double(f[3])}, {to_double(f[4]), to_double(f[5]), to_double(f[6])}});
  }
  return out;
}

}  // namespace geodesy
