#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace geodesy {

using Complex = std::complex<double>;

struct QuarticCoeffs {
  double a1 = 0, a2 = 0, a3 = 0, a4 = 0;  // x^4 + a1 x^3 + a2 x^2 + a3 x + a4
};

template <class T, std::size_t K>
T horner(const std::array<double, K>& c, T x) {
  T acc = c[0];
  for (std::size_t i = 1; i < K; ++i) acc = acc * x + c[i];
  return acc;
}

namespace detail {

template <std::size_t K>
Complex polish(const std::array<double, K>& c, Complex x, int rounds = 4) {
  std::array<double, K - 1> d{};
  for (std::size_t i = 0; i + 1 < K; ++i) d[i] = c[i] * static_cast<double>(K - 1 - i);
  for (int i = 0; i < rounds; ++i) {
    const Complex fx = horner(c, x);
    const Complex dfx = horner(d, x);
    if (std::abs(dfx) == 0.0) break;
    const Complex nx = x - fx / dfx;
    if (!std::isfinite(nx.real()) || !std::isfinite(nx.imag())) break;
    if (std::abs(horner(c, nx)) > std::abs(fx)) break;
    x = nx;
  }
  return x;
}

}  // namespace detail

/// Roots of xi^3 + p xi + q = 0 by Cardano. Real roots come first.
inline std::array<Complex, 3> solve_cubic_cardan(double p, double q) {
  std::array<Complex, 3> r;
  if (p == 0.0 && q == 0.0) return r;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc > 0.0) {
    const double sd = std::sqrt(disc);
    // Pick the larger-magnitude branch first to avoid cancellation.
    const double t = q > 0 ? -q / 2.0 - sd : -q / 2.0 + sd;
    const double u = std::cbrt(t);
    const double v = u != 0.0 ? -p / (3.0 * u) : 0.0;
    const double x = u + v;
    r[0] = x;
    r[1] = Complex(-x / 2.0, std::sqrt(3.0) / 2.0 * (u - v));
    r[2] = std::conj(r[1]);
  } else {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double th = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) r[k] = m * std::cos(th - 2.0 * std::numbers::pi / 3.0 * k);
  }
  const std::array<double, 4> c = {1.0, 0.0, p, q};
  for (auto& x : r) x = detail::polish(c, x);
  return r;
}

/// Roots of z^3 + b z^2 + c z + d = 0.
inline std::array<Complex, 3> solve_cubic(double b, double c, double d) {
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  auto r = solve_cubic_cardan(p, q);
  const std::array<double, 4> co = {1.0, b, c, d};
  for (auto& x : r) x = detail::polish(co, x - b / 3.0);
  return r;
}

/// Four roots of a monic quartic by Ferrari's reduction.
///
/// With y = x + a1/4 the depressed quartic is y^4 + p y^2 + q y + r. Writing
/// 2y = u + v + w, the squares u^2, v^2, w^2 are the roots of the resolvent
/// z^3 + 2p z^2 + (p^2 - 4r) z - q^2 = 0, and the signs obey u v w = -q.
inline std::array<Complex, 4> solve_quartic(const QuarticCoeffs& qc) {
  const double a1 = qc.a1, a2 = qc.a2, a3 = qc.a3, a4 = qc.a4;
  const double s = a1 / 4.0;
  const double p = a2 - 6.0 * s * s;
  const double q = a3 - 2.0 * a2 * s + 8.0 * s * s * s;
  const double r = a4 - a3 * s + a2 * s * s - 3.0 * s * s * s * s;

  auto z = solve_cubic(2.0 * p, p * p - 4.0 * r, -q * q);
  std::sort(z.begin(), z.end(), [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });
  const Complex u = std::sqrt(z[0]);
  const Complex v = std::sqrt(z[1]);
  Complex w = (std::abs(u * v) > 0.0) ? Complex(-q) / (u * v) : std::sqrt(z[2]);

  std::array<Complex, 4> roots = {(u + v + w) / 2.0, (u - v - w) / 2.0, (-u + v - w) / 2.0,
                                  (-u - v + w) / 2.0};
  const std::array<double, 5> c = {1.0, a1, a2, a3, a4};
  for (auto& x : roots) x = detail::polish(c, x - s);
  return roots;
}

/// Real parts of roots whose imaginary part is negligible.
template <std::size_t K>
std::vector<double> real_roots(const std::array<Complex, K>& roots, double tol = 1e-9) {
  std::vector<double> out;
  for (const auto& x : roots)
    if (std::abs(x.imag()) <= tol * std::max(1.0, std::abs(x.real()))) out.push_back(x.real());
  return out;
}

}  // namespace geodesy
