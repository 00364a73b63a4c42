#include "fracell/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <set>

#include "fracell/sobolev.hpp"
#include "fracell/special.hpp"
#include "fracell/spectral.hpp"
#include "fracell/symbols.hpp"

namespace fracell {

namespace {

using nlohmann::json;

double rel_error(cplx got, cplx want) {
  const double scale = std::max(1.0, std::abs(want));
  return std::abs(got - want) / scale;
}

CheckResult make_result(std::string id, double err, double tol, std::string lhs, std::string rhs,
                        json details) {
  CheckResult r;
  r.check_id = std::move(id);
  r.max_error = err;
  r.tolerance = tol;
  r.pass = err <= tol;
  r.engines = {std::move(lhs), std::move(rhs)};
  r.details = std::move(details);
  return r;
}

cplx differint(const FunctionSpec& f, const DifferintOrder& ord, double x, const QuadratureConfig& q) {
  return ord.nu.real() < 0.0 ? rl_integral(f, ord, x, q) : rl_derivative(f, ord, x, q);
}

SampledCurve sample_curve(const FunctionSpec& f, double extent, int points) {
  SampledCurve u;
  u.dx = extent / points;
  u.x0 = -0.5 * extent;
  u.values.resize(points);
  for (int i = 0; i < points; ++i) u.values[i] = f.value(u.x(i));
  return u;
}

// I^{-nu}(I^{-mu} f) by nested quadrature against the closed-form I^{-(mu+nu)} f.
CheckResult check_compose_integrals(const VerifyConfig& cfg) {
  const std::vector<std::pair<double, double>> orders = {{-0.5, -0.5}, {-0.3, -0.7}, {-1.2, -0.4}};
  const double x = 1.0;
  double err = 0.0;
  json cases = json::array();
  for (double p : {0.0, 1.0}) {
    const FunctionSpec f = FunctionSpec::power(p);
    for (const auto& [mu, nu] : orders) {
      Integrand inner;
      inner.eval = [&, mu = mu](double y) {
        return y > 0.0 ? rl_integral(f, DifferintOrder::finite(mu, 0.0), y, cfg.quadrature) : cplx(0.0);
      };
      inner.breakpoints = {0.0};
      inner.decay = DecayClass::kPolynomialGrowth;
      const cplx lhs = rl_integral(inner, DifferintOrder::finite(nu, 0.0), x, cfg.quadrature);
      const cplx rhs = closed_form_oracle(f, mu + nu, x).value;
      const double e = rel_error(lhs, rhs);
      err = std::max(err, e);
      cases.push_back({{"p", p}, {"mu", mu}, {"nu", nu}, {"x", x}, {"error", e}});
    }
  }
  return make_result("compose_integrals", err, cfg.tol_quadrature, "nested_quadrature", "closed_form",
                     {{"cases", cases}, {"subintervals", cfg.quadrature.subintervals}});
}

// D^nu f = D^{nu-n} f^{(n)} + sum_{k<n} (x-c)^{k-nu} / Gamma(k-nu+1) f^{(k)}(c).
CheckResult check_compose_derivatives(const VerifyConfig& cfg) {
  const double c = 0.0, x = 1.0;
  double err = 0.0;
  json cases = json::array();
  const std::vector<std::pair<std::string, FunctionSpec>> fixtures = {
      {"x+1", FunctionSpec::polynomial({1.0, 1.0})}, {"exp", FunctionSpec::exponential(1.0)}};
  for (const auto& [name, f] : fixtures) {
    for (double nu : {0.5, 1.3, 2.7}) {
      const DifferintOrder ord = DifferintOrder::finite(nu, c);
      const int n = ord.n();
      const cplx lhs = rl_derivative(f, ord, x, cfg.quadrature);
      cplx rhs = caputo_derivative(f, ord, x, cfg.quadrature);
      for (int k = 0; k < n; ++k) {
        rhs += std::pow(x - c, k - nu) * rgamma(k - nu + 1.0) * f.derivative(c, k);
      }
      const double e = rel_error(lhs, rhs);
      err = std::max(err, e);
      cases.push_back({{"f", name}, {"nu", nu}, {"x", x}, {"error", e}});
    }
  }
  return make_result("compose_derivatives", err, cfg.tol_quadrature, "rl_moment_derivative",
                     "caputo_plus_series", {{"cases", cases}});
}

CheckResult check_caputo_rl_equiv(const VerifyConfig& cfg) {
  QuadratureConfig fd = cfg.quadrature;
  fd.outer = OuterDerivative::kFiniteDifference;
  double err = 0.0;
  json cases = json::array();
  const std::vector<std::pair<std::string, FunctionSpec>> fixtures = {
      {"exp", FunctionSpec::exponential(1.0)}, {"gaussian", FunctionSpec::gaussian(0.0, 1.0)}};
  for (const auto& [name, f] : fixtures) {
    for (double nu : {0.3, 0.5, 1.2, 2.5}) {
      const DifferintOrder ord = DifferintOrder::from_minus_infinity(nu);
      const double x = 0.3;
      const cplx lhs = caputo_derivative(f, ord, x, cfg.quadrature);
      const cplx rhs = rl_derivative(f, ord, x, fd);
      const double e = rel_error(lhs, rhs);
      err = std::max(err, e);
      cases.push_back({{"f", name}, {"nu", nu}, {"x", x}, {"error", e}});
    }
  }
  return make_result("caputo_rl_equiv", err, cfg.tol_quadrature, "caputo", "rl_finite_difference",
                     {{"cases", cases}, {"base", "-inf"}});
}

CheckResult check_fourier_lemma(const VerifyConfig& cfg) {
  const FunctionSpec g = FunctionSpec::gaussian(0.0, 1.0);
  const SampledCurve u = sample_curve(g, cfg.fourier_extent, cfg.fourier_points);
  const int stride = std::max(1, cfg.fourier_points / 256);
  double err = 0.0;
  json cases = json::array();
  for (double nu : {0.0, 0.5, 1.0, 1.5}) {
    const FourierResult fr = fourier_differint_ex(u, nu);
    double e = 0.0;
    for (std::size_t i = 0; i < u.size(); i += stride) {
      const double x = u.x(i);
      if (std::abs(x) > 0.25 * cfg.fourier_extent) continue;
      const cplx q = nu == 0.0 ? cplx(g.value(x))
                               : rl_derivative(g, DifferintOrder::from_minus_infinity(nu), x, cfg.quadrature);
      e = std::max(e, std::abs(fr.curve.values[i] - q));
    }
    err = std::max(err, e);
    cases.push_back({{"nu", nu}, {"padding", fr.padding}, {"error", e}});
  }
  return make_result("fourier_lemma", err, cfg.tol_fourier, "fourier_multiplier", "quadrature",
                     {{"cases", cases}, {"extent", cfg.fourier_extent}, {"points", cfg.fourier_points}});
}

CheckResult check_cauchy_equiv(const VerifyConfig& cfg) {
  const std::vector<std::pair<std::string, FunctionSpec>> fixtures = {
      {"exp", FunctionSpec::exponential(1.0)},
      {"x^2", FunctionSpec::power(2.0)},
      {"1+x-x^3/2", FunctionSpec::polynomial({1.0, 1.0, 0.0, -0.5})}};
  double err = 0.0;
  json cases = json::array();
  for (const auto& [name, f] : fixtures) {
    for (double nu : {-0.5, 0.5, 1.5}) {
      const DifferintOrder ord = DifferintOrder::finite(nu, 0.0);
      const double x = 1.0;
      const cplx lhs = hankel_differintegral(f, ord, x);
      const cplx rhs = differint(f, ord, x, cfg.quadrature);
      const double e = rel_error(lhs, rhs);
      err = std::max(err, e);
      cases.push_back({{"f", name}, {"nu", nu}, {"x", x}, {"error", e}});
    }
  }
  return make_result("cauchy_equiv", err, cfg.tol_quadrature, "hankel_contour", "quadrature",
                     {{"cases", cases}});
}

// D^nu(u v) = sum_n binom(nu, n) D^{nu-n} u D^n v with u = v = x; the series
// stops after n = 1.
CheckResult check_osler_product(const VerifyConfig& cfg) {
  const FunctionSpec u = FunctionSpec::power(1.0);
  const FunctionSpec uv = FunctionSpec::power(2.0);
  double err = 0.0;
  json cases = json::array();
  for (double nu : {0.3, 0.5, 1.5}) {
    for (double x : {1.0, 2.0}) {
      cplx series = 0.0;
      for (int n = 0; n <= 1; ++n) {
        const cplx left = hankel_differintegral(u, DifferintOrder::finite(nu - n, 0.0), x);
        series += frac_binomial(nu, n) * left * u.derivative(x, n);
      }
      const cplx exact = closed_form_oracle(uv, nu, x).value;
      const double e = rel_error(series, exact);
      err = std::max(err, e);
      cases.push_back({{"nu", nu}, {"x", x}, {"error", e}});
    }
  }
  return make_result("osler_product", err, cfg.tol_series, "hankel_series", "closed_form",
                     {{"cases", cases}, {"terms", 2}});
}

CheckResult check_schwartz_conv(const VerifyConfig& cfg) {
  const BoxGrid grid{1, cfg.fourier_extent, cfg.fourier_points};
  const FunctionSpec f = FunctionSpec::gaussian(0.0, 1.0);
  const FunctionSpec g = FunctionSpec::gaussian(0.5, 0.8);
  const Field fg = sample_function(grid, {f});
  const Field gg = sample_function(grid, {g});
  const SampledCurve gc = sample_curve(g, grid.extent, grid.points);
  double err = 0.0;
  json cases = json::array();
  for (double nu : {0.5, 1.2, 1.5}) {
    Field dnf = Field::zeros(grid);
    for (int i = 0; i < grid.points; ++i) {
      dnf.values[i] = rl_derivative(f, DifferintOrder::from_minus_infinity(nu), grid.coordinate(i),
                                    cfg.quadrature);
    }
    const Field lhs = convolve(dnf, gg);
    const Field dng{grid, fourier_differint(gc, nu).values};
    const Field rhs = convolve(fg, dng);
    double e = 0.0;
    for (int i = 0; i < grid.points; ++i) {
      if (std::abs(grid.coordinate(i)) > 0.25 * grid.extent) continue;
      e = std::max(e, std::abs(lhs.values[i] - rhs.values[i]));
    }
    err = std::max(err, e);
    cases.push_back({{"nu", nu}, {"error", e}});
  }
  return make_result("schwartz_conv", err, cfg.tol_convolution, "quadrature_then_convolve",
                     "multiplier_then_convolve",
                     {{"cases", cases}, {"extent", grid.extent}, {"points", grid.points}});
}

CheckResult check_parametrix_identity(const VerifyConfig& cfg) {
  struct Case {
    std::string name;
    const char* op;
    BoxGrid grid;
  };
  const std::vector<Case> fixtures = {
      {"lambda^2", R"({"dim":1,"terms":[{"c":[1,0],"alpha":[2]}]})", {1, 8.0, 4096}},
      {"lambda^0.7+lambda^0.3+1",
       R"({"dim":1,"terms":[{"c":[1,0],"alpha":[0.7]},{"c":[1,0],"alpha":[0.3]},{"c":[1,0],"alpha":[0]}]})",
       {1, 8.0, 4096}},
      {"lambda1^0.5+lambda2^0.5", R"({"dim":2,"terms":[{"c":[1,0],"alpha":[0.5,0]},{"c":[1,0],"alpha":[0,0.5]}]})",
       {2, 8.0, 256}},
      {"lambda1^2+lambda2^2", R"({"dim":2,"terms":[{"c":[1,0],"alpha":[2,0]},{"c":[1,0],"alpha":[0,2]}]})",
       {2, 8.0, 256}}};
  double err = 0.0;
  json cases = json::array();
  for (const auto& c : fixtures) {
    const FracSymbol p = FracSymbol::parse(c.op);
    const Parametrix e = build_parametrix(p, c.grid);
    double worst = 0.0;
    for_each_frequency(c.grid, [&](std::size_t i, std::span<const double> lam) {
      worst = std::max(worst, std::abs(p.eval(lam) * e.e_hat[i] + e.chi[i] - 1.0));
    });
    err = std::max(err, worst);
    cases.push_back({{"op", c.name}, {"R", e.R}, {"error", worst}});
  }
  (void)cfg;
  return make_result("parametrix_identity", err, cfg.tol_parametrix, "symbol_eval", "parametrix_multiplier",
                     {{"cases", cases}});
}

CheckResult check_power_rule(const VerifyConfig& cfg) {
  double err = 0.0;
  json cases = json::array();
  for (double p : {0.0, 0.5, 1.0, 2.0}) {
    const FunctionSpec f = FunctionSpec::power(p);
    for (double nu : {-1.2, -0.5, -0.3, 0.3, 0.5, 1.2}) {
      const double x = 1.0;
      const cplx got = differint(f, DifferintOrder::finite(nu, 0.0), x, cfg.quadrature);
      const cplx want = closed_form_oracle(f, nu, x).value;
      const double e = std::abs(got - want) / std::abs(want);
      err = std::max(err, e);
      cases.push_back({{"p", p}, {"nu", nu}, {"error", e}});
    }
  }
  return make_result("power_rule", err, cfg.tol_quadrature, "quadrature", "closed_form", {{"cases", cases}});
}

CheckResult check_exp_eigen(const VerifyConfig& cfg) {
  double err = 0.0;
  json cases = json::array();
  for (double a : {0.5, 1.0, 2.0}) {
    const FunctionSpec f = FunctionSpec::exponential(a);
    for (double nu : {-1.2, -0.5, -0.3, 0.3, 0.5, 1.2}) {
      const double x = 0.0;
      const cplx got = differint(f, DifferintOrder::from_minus_infinity(nu), x, cfg.quadrature);
      const cplx want = closed_form_oracle(f, nu, x).value;
      const double e = std::abs(got - want) / std::abs(want);
      err = std::max(err, e);
      cases.push_back({{"a", a}, {"nu", nu}, {"error", e}});
    }
  }
  return make_result("exp_eigen", err, cfg.tol_quadrature, "quadrature", "closed_form", {{"cases", cases}});
}

using CheckFn = std::function<CheckResult(const VerifyConfig&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> checks = {
      {"compose_integrals", check_compose_integrals},
      {"compose_derivatives", check_compose_derivatives},
      {"caputo_rl_equiv", check_caputo_rl_equiv},
      {"fourier_lemma", check_fourier_lemma},
      {"cauchy_equiv", check_cauchy_equiv},
      {"osler_product", check_osler_product},
      {"schwartz_conv", check_schwartz_conv},
      {"parametrix_identity", check_parametrix_identity},
      {"power_rule", check_power_rule},
      {"exp_eigen", check_exp_eigen},
  };
  return checks;
}

}  // namespace

std::vector<std::string> identity_check_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, fn] : registry()) ids.push_back(id);
  return ids;
}

std::vector<CheckResult> run_identity_suite(const std::vector<std::string>& selector, const VerifyConfig& config) {
  std::set<std::string> wanted(selector.begin(), selector.end());
  for (const auto& id : wanted) {
    const auto& reg = registry();
    if (std::none_of(reg.begin(), reg.end(), [&](const auto& e) { return e.first == id; })) {
      std::string msg = "unknown check id '" + id + "'; available:";
      for (const auto& e : reg) msg += " " + e.first;
      fail(ErrorCode::kUnknownCheckId, msg);
    }
  }
  // Checks are independent; run them concurrently and report in registry order.
  std::vector<std::future<CheckResult>> pending;
  for (const auto& [id, fn] : registry()) {
    if (!wanted.empty() && !wanted.count(id)) continue;
    pending.push_back(std::async(std::launch::async, fn, std::cref(config)));
  }
  std::vector<CheckResult> out;
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

CheckResult run_commutator_check(double alpha, const FunctionSpec& u, const FunctionSpec& phi,
                                 const CommutatorConfig& config) {
  if (!(alpha >= 0.0 && alpha <= 1.5)) fail(ErrorCode::kInvalidArgument, "alpha must lie in [0, 1.5]");
  const BoxGrid grid{1, config.extent, config.points};
  const Field uf = sample_function(grid, {u});
  const Field pf = sample_function(grid, {phi});
  const FracSymbol d = FracSymbol(1, {{1.0, {{alpha}}}});

  Field phi_u = uf;
  for (std::size_t i = 0; i < phi_u.values.size(); ++i) phi_u.values[i] *= pf.values[i];
  const Field d_phi_u = apply_operator(d, phi_u);
  const Field d_u = apply_operator(d, uf);
  Field comm = d_phi_u;
  for (std::size_t i = 0; i < comm.values.size(); ++i) comm.values[i] -= pf.values[i] * d_u.values[i];

  const bool integer = alpha == std::floor(alpha);
  json details = {{"alpha", alpha}, {"u", u.to_json()}, {"phi", phi.to_json()},
                  {"extent", grid.extent}, {"points", grid.points}};
  if (integer) {
    if (!u.has_derivatives()) {
      fail(ErrorCode::kNotSmoothEnough, "integer-order commutator check needs a smooth u");
    }
    // The symbol lambda acts as i d/dx, so [lambda, phi] u = i phi' u.
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < grid.points; ++i) {
      const double x = grid.coordinate(i);
      const cplx want = alpha == 0.0 ? cplx(0.0) : cplx(0.0, phi.derivative(x, 1) * u.value(x));
      err = std::max(err, std::abs(comm.values[i] - want));
      scale = std::max(scale, std::abs(uf.values[i]));
    }
    details["mode"] = "pointwise";
    return make_result("commutator", err / std::max(scale, 1e-300), config.exact_tolerance, "spectral_commutator",
                       alpha == 0.0 ? "zero" : "leibniz_i_phi_prime_u", details);
  }

  const RegularityEstimate ru = estimate_regularity(uf);
  const RegularityEstimate rc = estimate_regularity(comm);
  const RegularityEstimate rd = estimate_regularity(d_phi_u);
  if (!ru.reliable || ru.capped || !rc.reliable || !rd.reliable) {
    fail(ErrorCode::kUnreliableEstimate, "regularity estimate for the commutator check is unreliable");
  }
  const double t = ru.s_star;
  const double comm_s = rc.capped ? std::numeric_limits<double>::infinity() : rc.s_star;
  const double err = std::max((t - alpha + 1.0) - comm_s, rd.s_star - (t - alpha));
  details["mode"] = "regularity";
  details["t"] = t;
  details["commutator_s"] = rc.capped ? json(nullptr) : json(rc.s_star);
  details["d_phi_u_s"] = rd.s_star;
  return make_result("commutator", err, config.regularity_margin, "spectral_commutator",
                     "regularity_exponent_count", details);
}

json to_json(const CheckResult& r) {
  return {{"check_id", r.check_id}, {"max_error", r.max_error}, {"tolerance", r.tolerance},
          {"pass", r.pass},         {"engines", r.engines},     {"details", r.details}};
}

}  // namespace fracell
