#pragma once

#include "fracell/error.hpp"

namespace fracell {

inline constexpr double kPi = 3.14159265358979323846;

// True when z is 0, -1, -2, ... (poles of the gamma function).
bool is_nonpositive_integer(cplx z);

// Gamma function on the complex plane. Real arguments go through std::tgamma;
// the rest use a Lanczos approximation with reflection (relative error ~1e-15).
cplx gamma(cplx z);

// 1/Gamma(z); exactly zero at the poles of Gamma.
cplx rgamma(cplx z);

// nu (nu-1) ... (nu-n+1) / n!
cplx frac_binomial(cplx nu, int n);

// nu (nu-1) ... (nu-k+1); equals 1 for k == 0.
cplx falling_factorial(cplx nu, int k);

double binomial(int n, int k);

// Probabilists' Hermite polynomial He_k(t).
double hermite_he(int k, double t);
cplx hermite_he(int k, cplx t);

}  // namespace fracell
