#include "fracell/special.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace fracell {

namespace {

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLanczosG = 7.0;

cplx lanczos_gamma(cplx z) {
  if (z.real() < 0.5) {
    return kPi / (std::sin(kPi * z) * lanczos_gamma(1.0 - z));
  }
  z -= 1.0;
  cplx acc = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    acc += kLanczos[i] / (z + static_cast<double>(i));
  }
  const cplx t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

template <class T>
T hermite_impl(int k, T t) {
  if (k == 0) return T(1.0);
  T prev = T(1.0);
  T cur = t;
  for (int j = 1; j < k; ++j) {
    T next = t * cur - static_cast<double>(j) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

cplx gamma(cplx z) {
  if (is_nonpositive_integer(z)) {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  if (z.imag() == 0.0) return std::tgamma(z.real());
  return lanczos_gamma(z);
}

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return 1.0 / gamma(z);
}

cplx falling_factorial(cplx nu, int k) {
  cplx acc = 1.0;
  for (int j = 0; j < k; ++j) acc *= nu - static_cast<double>(j);
  return acc;
}

cplx frac_binomial(cplx nu, int n) {
  if (n < 0) fail(ErrorCode::kInvalidArgument, "frac_binomial: n must be nonnegative");
  cplx acc = 1.0;
  for (int j = 0; j < n; ++j) {
    acc *= (nu - static_cast<double>(j)) / static_cast<double>(j + 1);
  }
  return acc;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double acc = 1.0;
  for (int j = 1; j <= k; ++j) acc = acc * (n - k + j) / j;
  return acc;
}

double hermite_he(int k, double t) { return hermite_impl<double>(k, t); }
cplx hermite_he(int k, cplx t) { return hermite_impl<cplx>(k, t); }

}  // namespace fracell
