#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <random>

namespace geodesy::test {

/// Fixed-seed sampler so property tests are reproducible.
class Sampler {
 public:
  explicit Sampler(unsigned seed = 20240611u) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

 private:
  std::mt19937_64 gen_;
};

/// Adaptive Gauss-Kronrod (Boost) used as the reference integral.
template <class F>
double reference_integral(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace geodesy::test
