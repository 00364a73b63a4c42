#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fracell/error.hpp"
#include "fracell/function_spec.hpp"

namespace fracell {

// Order nu and base point c of a differintegral. An empty base means c = -inf.
struct DifferintOrder {
  cplx nu;
  std::optional<double> base;

  static DifferintOrder finite(cplx nu, double c) { return {nu, c}; }
  static DifferintOrder from_minus_infinity(cplx nu) { return {nu, std::nullopt}; }

  bool base_is_finite() const { return base.has_value(); }

  // floor(Re nu) + 1; throws WrongSign when Re nu < 0.
  int n() const;
};

// Uniform samples values[i] at x0 + i dx.
struct SampledCurve {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<cplx> values;

  void validate() const;
  std::size_t size() const { return values.size(); }
  double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }

  // Linear interpolation; zero outside the sampled range.
  cplx interpolate(double y) const;
};

enum class OuterDerivative { kAuto, kAnalytic, kFiniteDifference };

struct QuadratureConfig {
  int subintervals = 2048;
  double grading = 2.0;
  // Overrides the automatic tail cut for c = -inf.
  std::optional<double> truncation_length;
  OuterDerivative outer = OuterDerivative::kAuto;

  void validate() const;
};

// A function of one real variable as seen by the quadrature engines.
struct Integrand {
  std::function<cplx(double)> eval;
  std::vector<double> breakpoints;
  DecayClass decay = DecayClass::kCompactSupport;
  // Below this point the function is negligible.
  std::optional<double> lower_cutoff;
  // Positive when the function behaves like exp(rate * y) as y -> -inf.
  double exponential_rate = 0.0;
};

Integrand make_integrand(const FunctionSpec& f, int derivative = 0);
Integrand make_integrand(const SampledCurve& u);

// Riemann-Liouville integral (Re nu < 0) by product integration on a graded mesh.
cplx rl_integral(const Integrand& f, const DifferintOrder& ord, double x,
                 const QuadratureConfig& q = {});
cplx rl_integral(const FunctionSpec& f, const DifferintOrder& ord, double x,
                 const QuadratureConfig& q = {});
cplx rl_integral(const SampledCurve& f, const DifferintOrder& ord, double x,
                 const QuadratureConfig& q = {});

// Riemann-Liouville derivative (Re nu >= 0). Catalog functions with closed-form
// derivatives are differentiated analytically unless q.outer asks for finite
// differences; everything else goes through a Richardson-extrapolated central
// difference of the integral of order nu - n.
cplx rl_derivative(const Integrand& f, const DifferintOrder& ord, double x,
                   const QuadratureConfig& q = {});
cplx rl_derivative(const FunctionSpec& f, const DifferintOrder& ord, double x,
                   const QuadratureConfig& q = {});
cplx rl_derivative(const SampledCurve& f, const DifferintOrder& ord, double x,
                   const QuadratureConfig& q = {});

// Integral of order nu - n applied to the n-th derivative of f.
cplx caputo_derivative(const FunctionSpec& f, const DifferintOrder& ord, double x,
                       const QuadratureConfig& q = {});

struct HankelContour {
  // Radius of the loop around x; defaults to |x - c| / 2.
  std::optional<double> loop_radius;
  int nodes = 1200;
};

// Cauchy-type differintegral over a keyhole path that starts and ends at c
// and winds once counter-clockwise around x.
cplx hankel_differintegral(const FunctionSpec& f, const DifferintOrder& ord, double x,
                           const HankelContour& contour = {});

struct FourierOptions {
  // Admissible periodic wrap-around, relative to max |u|.
  double wrap_tolerance = 1e-6;
  // Largest zero-padding factor tried before giving up with EdgeLeakage.
  int max_padding = 512;
  // Edge samples above this fraction of max |u| are rejected.
  double edge_threshold = 1e-8;
};

struct FourierResult {
  SampledCurve curve;
  int padding = 1;
  double wrap_estimate = 0.0;
};

// Multiplier (-i lambda)^nu on a periodic box, with the transform
// u_hat(lambda) = int u(x) exp(i lambda x) dx.
FourierResult fourier_differint_ex(const SampledCurve& u, cplx nu, const FourierOptions& opt = {});
SampledCurve fourier_differint(const SampledCurve& u, cplx nu, const FourierOptions& opt = {});

// (-i lambda)^nu = |lambda|^nu exp(-i pi nu sgn(lambda) / 2); lambda = 0 gives 0.
cplx fourier_multiplier(double lambda, cplx nu);

struct OracleValue {
  cplx value;
  // Set when Gamma(p + 1 - nu) sits on a pole and the coefficient is exactly 0.
  bool pole = false;
};

// Power (c = 0): Gamma(p+1)/Gamma(p+1-nu) x^{p-nu}. Exponential (c = -inf): a^nu e^{a x}.
OracleValue closed_form_oracle(const FunctionSpec& f, cplx nu, double x);

// Weights for the k-th derivative at z from values at the given nodes.
std::vector<double> fornberg_weights(double z, const std::vector<double>& nodes, int k);

}  // namespace fracell
