#pragma once

#include <array>
#include <cmath>

namespace geodesy {

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodX = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodW = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussW = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(F& f, double lo, double hi, double& result, double& error) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double fc = f(c);
  double k = fc * kKronrodW[7];
  double g = fc * kGaussW[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kKronrodX[j];
    const double s = f(c - dx) + f(c + dx);
    k += kKronrodW[j] * s;
    if (j % 2 == 1) g += kGaussW[j / 2] * s;
  }
  result = k * h;
  error = std::abs((k - g) * h);
}

template <class F>
double adaptive(F& f, double lo, double hi, double tol, int depth) {
  double r = 0, err = 0;
  gk15(f, lo, hi, r, err);
  if (err <= tol || depth <= 0) return r;
  const double mid = 0.5 * (lo + hi);
  return adaptive(f, lo, mid, 0.5 * tol, depth - 1) + adaptive(f, mid, hi, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) integral of f over [lo, hi] to absolute
/// tolerance tol.
template <class F>
double integrate(F f, double lo, double hi, double tol = 1e-12) {
  if (lo == hi) return 0.0;
  if (hi < lo) return -integrate(f, hi, lo, tol);
  return detail::adaptive(f, lo, hi, tol, 40);
}

}  // namespace geodesy
