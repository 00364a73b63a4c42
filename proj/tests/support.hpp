#pragma once

// Shared helpers for the unit tests: independent quadrature oracles built on
// Boost's double-exponential rules, plus seeded generators for property tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace testing_support {

using cplx = std::complex<double>;

inline double rel_err(cplx got, cplx want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

// (1/G(mu)) int_c^x (x - y)^(mu - 1) f(y) dy with the endpoint singularity
// handled by tanh-sinh.
template <class F>
double riemann_liouville_integral(F f, double mu, double c, double x) {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto g = [&](double t) { return std::pow(t, mu - 1.0) * f(x - t); };
  return ts.integrate(g, 0.0, x - c) / std::tgamma(mu);
}

// Same from c = -inf with exp-sinh on the half line.
template <class F>
double riemann_liouville_integral_inf(F f, double mu, double x) {
  boost::math::quadrature::exp_sinh<double> es;
  auto g = [&](double t) { return t == 0.0 ? 0.0 : std::pow(t, mu - 1.0) * f(x - t); };
  return es.integrate(g, 0.0, std::numeric_limits<double>::infinity()) / std::tgamma(mu);
}

// Deterministic generator for hand-rolled property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

 private:
  std::mt19937_64 rng_;
};

// Non-integer order drawn away from the integers by at least `gap`.
inline double fractional_order(Gen& g, double lo, double hi, double gap = 0.05) {
  for (;;) {
    const double v = g.uniform(lo, hi);
    const double frac = v - std::floor(v);
    if (frac > gap && frac < 1.0 - gap) return v;
  }
}

}  // namespace testing_support
