#include <cmath>
#include <vector>

#include "doctest.h"
#include "fracell/fracops.hpp"
#include "fracell/special.hpp"
#include "support.hpp"

using fracell::cplx;
using fracell::DifferintOrder;
using fracell::ErrorCode;
using fracell::FunctionSpec;
using fracell::QuadratureConfig;
using testing_support::rel_err;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const fracell::Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

// Gamma-ratio power rule written with the C library gamma, separate from the
// library's own oracle.
double power_rule(double p, double nu, double x) {
  const double denom_arg = p - nu + 1.0;
  if (denom_arg <= 0.0 && denom_arg == std::floor(denom_arg)) return 0.0;
  return std::tgamma(p + 1.0) / std::tgamma(denom_arg) * std::pow(x, p - nu);
}

}  // namespace

TEST_CASE("fractional integral of powers matches tanh-sinh quadrature") {
  for (double p : {0.0, 0.5, 1.0, 2.0}) {
    for (double mu : {0.3, 0.5, 1.2}) {
      for (double x : {0.5, 1.0, 2.3}) {
        auto f = [p](double y) { return std::pow(y, p); };
        const double want = testing_support::riemann_liouville_integral(f, mu, 0.0, x);
        const cplx got = fracell::rl_integral(FunctionSpec::power(p), DifferintOrder::finite(-mu, 0.0), x);
        CAPTURE(p);
        CAPTURE(mu);
        CAPTURE(x);
        CHECK(rel_err(got, want) < 1e-6);
        CHECK(std::abs(got.imag()) == 0.0);
      }
    }
  }
}

TEST_CASE("fractional derivative of powers follows the gamma-ratio rule") {
  for (double p : {0.0, 0.5, 1.0, 2.0}) {
    for (double nu : {0.3, 0.5, 1.2}) {
      for (double x : {0.5, 1.0, 2.3}) {
        const cplx got = fracell::rl_derivative(FunctionSpec::power(p), DifferintOrder::finite(nu, 0.0), x);
        CAPTURE(p);
        CAPTURE(nu);
        CHECK(rel_err(got, power_rule(p, nu, x)) < 1e-6);
      }
    }
  }
}

TEST_CASE("half derivative of the identity is 2 sqrt(x / pi)") {
  const cplx v = fracell::rl_derivative(FunctionSpec::power(1.0), DifferintOrder::finite(0.5, 0.0), 1.0);
  CHECK(std::abs(v - 2.0 / std::sqrt(fracell::kPi)) < 1e-6);
}

TEST_CASE("derivative of a constant at an order with a gamma pole") {
  // D^1.2 of 1 from 0 is x^-1.2 / G(-0.2); D^1 of 1 is exactly 0.
  const cplx d1 = fracell::rl_derivative(FunctionSpec::power(0.0), DifferintOrder::finite(1.0, 0.0), 0.7);
  CHECK(std::abs(d1) < 1e-14);
  const fracell::OracleValue o = fracell::closed_form_oracle(FunctionSpec::power(1.0), 2.0, 0.7);
  CHECK(o.pole);
  CHECK(o.value == cplx(0.0, 0.0));
}

TEST_CASE("exponential from minus infinity is an eigenfunction") {
  for (double a : {0.5, 1.0, 2.0}) {
    for (double nu : {-1.2, -0.5, -0.3, 0.3, 0.5, 1.2}) {
      const double x = 0.4;
      const DifferintOrder ord = DifferintOrder::from_minus_infinity(nu);
      const FunctionSpec f = FunctionSpec::exponential(a);
      const cplx got = nu < 0 ? fracell::rl_integral(f, ord, x) : fracell::rl_derivative(f, ord, x);
      CAPTURE(a);
      CAPTURE(nu);
      CHECK(rel_err(got, std::pow(a, nu) * std::exp(a * x)) < 1e-6);
    }
  }
}

TEST_CASE("gaussian from minus infinity converges to exp-sinh quadrature at second order") {
  const FunctionSpec g = FunctionSpec::gaussian(0.0, 1.0);
  for (double mu : {0.4, 1.5}) {
    for (double x : {-1.0, 0.0, 2.0}) {
      auto f = [](double y) { return std::exp(-0.5 * y * y); };
      const double want = testing_support::riemann_liouville_integral_inf(f, mu, x);
      QuadratureConfig coarse, fine;
      fine.subintervals = 4 * coarse.subintervals;
      const auto ord = DifferintOrder::from_minus_infinity(-mu);
      const double e_coarse = rel_err(fracell::rl_integral(g, ord, x, coarse), want);
      const double e_fine = rel_err(fracell::rl_integral(g, ord, x, fine), want);
      CAPTURE(mu);
      CAPTURE(x);
      CHECK(e_coarse < 1e-5);
      // Four times the mesh, roughly sixteen times smaller error.
      CHECK(e_fine < e_coarse / 12.0);
    }
  }
  // D^0.5 g = I^0.5 g' since the gaussian vanishes at -inf.
  for (double x : {-1.0, 0.5}) {
    auto dg = [](double y) { return -y * std::exp(-0.5 * y * y); };
    const double want = testing_support::riemann_liouville_integral_inf(dg, 0.5, x);
    const cplx got = fracell::rl_derivative(g, DifferintOrder::from_minus_infinity(0.5), x);
    CHECK(std::abs(got - want) < 1e-6);
  }
}

TEST_CASE("closed-form oracle against independent formulas") {
  const fracell::OracleValue pw = fracell::closed_form_oracle(FunctionSpec::power(0.5), -0.5, 2.0);
  CHECK(rel_err(pw.value, std::tgamma(1.5) / std::tgamma(2.0) * 2.0) < 1e-14);
  const fracell::OracleValue ex = fracell::closed_form_oracle(FunctionSpec::exponential(2.0), 0.5, 1.0);
  CHECK(rel_err(ex.value, std::sqrt(2.0) * std::exp(2.0)) < 1e-14);
  // Complex order: a^nu = exp(nu log a).
  const fracell::OracleValue cx = fracell::closed_form_oracle(FunctionSpec::exponential(2.0), cplx(0.5, 1.0), 0.0);
  CHECK(rel_err(cx.value, std::exp(cplx(0.5, 1.0) * std::log(2.0))) < 1e-14);
  CHECK_THROWS_AS(fracell::closed_form_oracle(FunctionSpec::gaussian(0, 1), 0.5, 0.0), fracell::Error);
}

TEST_CASE("complex orders are accepted by the quadrature engine") {
  const cplx nu(-0.5, 0.3);
  const cplx got = fracell::rl_integral(FunctionSpec::power(1.0), DifferintOrder::finite(nu, 0.0), 1.5);
  const cplx want = fracell::closed_form_oracle(FunctionSpec::power(1.0), nu, 1.5).value;
  CHECK(rel_err(got, want) < 1e-7);
}

TEST_CASE("Caputo derivative equals Riemann-Liouville when initial data vanish") {
  const FunctionSpec e = FunctionSpec::exponential(1.0);
  for (double nu : {0.3, 1.4}) {
    const auto ord = DifferintOrder::from_minus_infinity(nu);
    CHECK(rel_err(fracell::caputo_derivative(e, ord, 0.2), fracell::rl_derivative(e, ord, 0.2)) < 1e-7);
  }
  // Caputo kills constants; RL does not.
  const auto ord = DifferintOrder::finite(0.5, 0.0);
  CHECK(std::abs(fracell::caputo_derivative(FunctionSpec::power(0.0), ord, 1.0)) < 1e-14);
  CHECK(std::abs(fracell::rl_derivative(FunctionSpec::power(0.0), ord, 1.0)) > 0.5);
  // Integer order reduces to the ordinary derivative.
  CHECK(fracell::caputo_derivative(e, DifferintOrder::finite(2.0, 0.0), 0.3).real() ==
        doctest::Approx(std::exp(0.3)));
}

TEST_CASE("finite-difference outer derivative agrees with the analytic path") {
  QuadratureConfig fd;
  fd.outer = fracell::OuterDerivative::kFiniteDifference;
  const FunctionSpec e = FunctionSpec::exponential(1.0);
  for (double nu : {0.5, 1.3, 2.7}) {
    const auto ord = DifferintOrder::finite(nu, 0.0);
    const cplx a = fracell::rl_derivative(e, ord, 1.0);
    const cplx b = fracell::rl_derivative(e, ord, 1.0, fd);
    CHECK(rel_err(b, a) < 1e-6);
  }
}

TEST_CASE("step function: differentiation near a jump is refused") {
  const FunctionSpec s = FunctionSpec::step(-1.0, 1.0);
  const auto ord = DifferintOrder::finite(0.5, -2.0);
  // Away from the jumps the finite-difference path works and matches the
  // closed form (x+1)^{-1/2}/G(1/2) for x in (-1, 1).
  const cplx v = fracell::rl_derivative(s, ord, 0.0);
  CHECK(rel_err(v, 1.0 / std::sqrt(fracell::kPi)) < 1e-6);
  CHECK(code_of([&] { fracell::rl_derivative(s, ord, 1.0 + 1e-4); }) == ErrorCode::kNotSmoothEnough);
  QuadratureConfig an;
  an.outer = fracell::OuterDerivative::kAnalytic;
  CHECK(code_of([&] { fracell::rl_derivative(s, ord, 0.0, an); }) == ErrorCode::kNotSmoothEnough);
  CHECK(code_of([&] { fracell::caputo_derivative(s, ord, 0.0); }) == ErrorCode::kNotSmoothEnough);
}

TEST_CASE("quadrature error conditions") {
  const FunctionSpec p1 = FunctionSpec::power(1.0);
  CHECK(code_of([&] { fracell::rl_integral(p1, DifferintOrder::finite(0.5, 0.0), 1.0); }) ==
        ErrorCode::kWrongSign);
  CHECK(code_of([&] { fracell::rl_derivative(p1, DifferintOrder::finite(-0.5, 0.0), 1.0); }) ==
        ErrorCode::kWrongSign);
  CHECK(code_of([&] { fracell::rl_integral(p1, DifferintOrder::finite(-0.5, 2.0), 1.0); }) ==
        ErrorCode::kDomainOrder);
  CHECK(code_of([&] { fracell::rl_integral(p1, DifferintOrder::from_minus_infinity(-0.5), 1.0); }) ==
        ErrorCode::kNonConvergent);
  QuadratureConfig bad;
  bad.subintervals = 4;
  CHECK(code_of([&] { fracell::rl_integral(p1, DifferintOrder::finite(-0.5, 0.0), 1.0, bad); }) ==
        ErrorCode::kInvalidArgument);
  bad = {};
  bad.grading = 0.5;
  CHECK(code_of([&] { fracell::rl_integral(p1, DifferintOrder::finite(-0.5, 0.0), 1.0, bad); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("compactly supported functions vanish left of their support") {
  const auto ord = DifferintOrder::from_minus_infinity(-0.5);
  CHECK(fracell::rl_integral(FunctionSpec::bump(0.0, 1.0), ord, -1.5) == cplx(0.0, 0.0));
  CHECK(fracell::rl_integral(FunctionSpec::step(-1.0, 1.0), ord, -1.5) == cplx(0.0, 0.0));
  // Right of the step: (2/G(3/2)) ((x+1)^{1/2} - (x-1)^{1/2}) / 2 * ... written out:
  const double x = 2.0;
  const double want = (std::sqrt(x + 1.0) - std::sqrt(x - 1.0)) / std::tgamma(1.5);
  CHECK(rel_err(fracell::rl_integral(FunctionSpec::step(-1.0, 1.0), ord, x), want) < 1e-8);
}

TEST_CASE("sampled curves: integral of sampled exponential") {
  fracell::SampledCurve u;
  u.x0 = 0.0;
  u.dx = 1.0 / 512;
  for (int i = 0; i <= 1024; ++i) u.values.push_back(std::exp(u.x(i)));
  const cplx got = fracell::rl_integral(u, DifferintOrder::finite(-0.5, 0.0), 1.5);
  const double want = testing_support::riemann_liouville_integral([](double y) { return std::exp(y); }, 0.5,
                                                                  0.0, 1.5);
  CHECK(rel_err(got, want) < 1e-5);
  CHECK(u.interpolate(0.5).real() == doctest::Approx(std::exp(0.5)).epsilon(1e-6));
}

TEST_CASE("Hankel contour agrees with the closed forms on analytic inputs") {
  const FunctionSpec e = FunctionSpec::exponential(1.0);
  for (double nu : {-0.5, 0.5, 1.5}) {
    // From c = 0 the exponential gives the incomplete-gamma form; compare
    // against quadrature instead.
    const auto ord = DifferintOrder::finite(nu, 0.0);
    const cplx quad = nu < 0 ? fracell::rl_integral(e, ord, 1.0) : fracell::rl_derivative(e, ord, 1.0);
    CHECK(rel_err(fracell::hankel_differintegral(e, ord, 1.0), quad) < 1e-6);
  }
  for (double nu : {-1.5, 0.5, 2.5}) {
    const FunctionSpec p2 = FunctionSpec::power(2.0);
    CHECK(rel_err(fracell::hankel_differintegral(p2, DifferintOrder::finite(nu, 0.0), 1.3),
                  power_rule(2.0, nu, 1.3)) < 1e-9);
  }
}

TEST_CASE("Hankel contour error conditions") {
  const FunctionSpec e = FunctionSpec::exponential(1.0);
  CHECK(code_of([&] { fracell::hankel_differintegral(FunctionSpec::step(-1, 1), DifferintOrder::finite(0.5, -2), 0.0); }) ==
        ErrorCode::kNotAnalytic);
  CHECK(code_of([&] { fracell::hankel_differintegral(FunctionSpec::power(0.5), DifferintOrder::finite(0.5, 0), 1.0); }) ==
        ErrorCode::kNotAnalytic);
  CHECK(code_of([&] { fracell::hankel_differintegral(e, DifferintOrder::from_minus_infinity(0.5), 1.0); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { fracell::hankel_differintegral(e, DifferintOrder::finite(-2.0, 0.0), 1.0); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { fracell::hankel_differintegral(e, DifferintOrder::finite(0.5, 1.0), 1.0); }) ==
        ErrorCode::kDomainOrder);
  fracell::HankelContour wide;
  wide.loop_radius = 2.0;
  CHECK(code_of([&] { fracell::hankel_differintegral(e, DifferintOrder::finite(0.5, 0.0), 1.0, wide); }) ==
        ErrorCode::kBranchCollision);
  fracell::HankelContour sparse;
  sparse.nodes = 10;
  CHECK(code_of([&] { fracell::hankel_differintegral(e, DifferintOrder::finite(0.5, 0.0), 1.0, sparse); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("Fourier engine against quadrature on a gaussian") {
  const double L = 40.0;
  const int m = 4096;
  fracell::SampledCurve u;
  u.x0 = -0.5 * L;
  u.dx = L / m;
  const FunctionSpec g = FunctionSpec::gaussian(0.0, 1.0);
  for (int i = 0; i < m; ++i) u.values.push_back(g.value(u.x(i)));
  for (double nu : {0.5, 1.5}) {
    const fracell::FourierResult r = fracell::fourier_differint_ex(u, nu);
    double worst = 0.0;
    for (double x : {-5.0, -1.0, 0.0, 2.5, 7.5}) {
      const std::size_t i = static_cast<std::size_t>(std::lround((x - u.x0) / u.dx));
      const cplx q = fracell::rl_derivative(g, DifferintOrder::from_minus_infinity(nu), u.x(i));
      worst = std::max(worst, std::abs(r.curve.values[i] - q));
    }
    CAPTURE(nu);
    CHECK(worst < 1e-4);
    CHECK(r.padding >= 1);
  }
}

TEST_CASE("Fourier multiplier convention") {
  // (-i lambda)^nu with the principal branch: lambda > 0 gives arg -pi nu / 2.
  const cplx m = fracell::fourier_multiplier(2.0, 0.5);
  CHECK(rel_err(m, std::sqrt(2.0) * std::exp(cplx(0.0, -fracell::kPi / 4))) < 1e-15);
  const cplx mn = fracell::fourier_multiplier(-2.0, 0.5);
  CHECK(rel_err(mn, std::sqrt(2.0) * std::exp(cplx(0.0, fracell::kPi / 4))) < 1e-15);
  CHECK(fracell::fourier_multiplier(0.0, 0.0) == cplx(1.0, 0.0));
  CHECK(fracell::fourier_multiplier(0.0, 0.7) == cplx(0.0, 0.0));
  // Integer order 1 is the symbol of d/dx: -i lambda.
  CHECK(std::abs(fracell::fourier_multiplier(3.0, 1.0) - cplx(0.0, -3.0)) < 1e-15);
}

TEST_CASE("Fourier engine error conditions") {
  fracell::SampledCurve u;
  u.x0 = -8.0;
  u.dx = 16.0 / 256;
  for (int i = 0; i < 256; ++i) u.values.push_back(std::exp(u.x(i)));
  CHECK(code_of([&] { fracell::fourier_differint(u, 0.5); }) == ErrorCode::kEdgeLeakage);
  for (int i = 0; i < 256; ++i) u.values[i] = std::exp(-u.x(i) * u.x(i));
  CHECK(code_of([&] { fracell::fourier_differint(u, -0.5); }) == ErrorCode::kDCUndefined);
  // Order zero is the identity.
  const fracell::SampledCurve same = fracell::fourier_differint(u, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(same.values[i] - u.values[i]) < 1e-14);
}

TEST_CASE("Fornberg weights reproduce the classical stencils") {
  const auto w = fracell::fornberg_weights(0.0, {-1.0, 0.0, 1.0}, 2);
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(-2.0));
  CHECK(w[2] == doctest::Approx(1.0));
  const auto d1 = fracell::fornberg_weights(0.0, {-2.0, -1.0, 1.0, 2.0}, 1);
  CHECK(d1[0] == doctest::Approx(1.0 / 12));
  CHECK(d1[1] == doctest::Approx(-8.0 / 12));
}
