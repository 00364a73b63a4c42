#include "fracell/fracops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "fracell/fft.hpp"
#include "fracell/special.hpp"

namespace fracell {

namespace {

constexpr double kTailTolerance = 1e-13;

// 8-point Gauss-Legendre on [0, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.019855071751231856, 0.10166676129318664, 0.23723379504183550, 0.40828267875217510,
    0.59171732124782490,  0.76276620495816450, 0.89833323870681336, 0.98014492824876814};
constexpr std::array<double, 8> kGlWeights = {
    0.050614268145188130, 0.11119051722668724, 0.15685332293894364, 0.18134189168918100,
    0.18134189168918100,  0.15685332293894364, 0.11119051722668724, 0.050614268145188130};

bool is_integer_order(cplx nu) { return nu.imag() == 0.0 && nu.real() == std::floor(nu.real()); }

cplx cpow_pos(double t, cplx b) {
  if (t == 0.0) return 0.0;
  return std::exp(b * std::log(t));
}

// Weights (w0, w1) such that int_{t0}^{t1} t^{beta-1} g(t) dt ~ w0 g(t0) + w1 g(t1)
// for g linear on the interval.
std::pair<double, double> linear_moment_weights_real(double t0, double t1, double beta) {
  const double h = t1 - t0;
  if (t0 > 16.0 * h) {
    double w0 = 0.0, w1 = 0.0;
    for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
      const double s = kGlNodes[i];
      const double k = kGlWeights[i] * h * std::pow(t0 + s * h, beta - 1.0);
      w0 += (1.0 - s) * k;
      w1 += s * k;
    }
    return {w0, w1};
  }
  const double p0 = t0 == 0.0 ? 0.0 : std::pow(t0, beta);
  const double p1 = std::pow(t1, beta);
  const double m0 = (p1 - p0) / beta;
  const double m1 = (p1 * t1 - p0 * t0) / (beta + 1.0);
  const double w1 = (m1 - t0 * m0) / h;
  return {m0 - w1, w1};
}

std::pair<cplx, cplx> linear_moment_weights(double t0, double t1, cplx beta) {
  if (beta.imag() == 0.0) {
    const auto [w0, w1] = linear_moment_weights_real(t0, t1, beta.real());
    return {w0, w1};
  }
  const double h = t1 - t0;
  if (t0 > 16.0 * h) {
    cplx w0 = 0.0, w1 = 0.0;
    for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
      const double s = kGlNodes[i];
      const cplx k = kGlWeights[i] * h * cpow_pos(t0 + s * h, beta - 1.0);
      w0 += (1.0 - s) * k;
      w1 += s * k;
    }
    return {w0, w1};
  }
  const cplx m0 = (cpow_pos(t1, beta) - cpow_pos(t0, beta)) / beta;
  const cplx m1 = (cpow_pos(t1, beta + 1.0) - cpow_pos(t0, beta + 1.0)) / (beta + 1.0);
  const cplx w1 = (m1 - t0 * m0) / h;
  return {m0 - w1, w1};
}

// count + 1 nodes on [a, b], clustered toward both ends with exponent gamma.
std::vector<double> graded_nodes(double a, double b, int count, double gamma) {
  std::vector<double> nodes(count + 1);
  const double scale = std::pow(2.0, gamma - 1.0);
  for (int j = 0; j <= count; ++j) {
    const double s = static_cast<double>(j) / count;
    const double u = s <= 0.5 ? scale * std::pow(s, gamma) : 1.0 - scale * std::pow(1.0 - s, gamma);
    nodes[j] = a + (b - a) * u;
  }
  nodes.front() = a;
  nodes.back() = b;
  return nodes;
}

// Nodes on [0, T] whose spacing grows like exp(t / k).
std::vector<double> exponential_nodes(double T, int count, double k) {
  std::vector<double> nodes(count + 1);
  const double span = -std::expm1(-T / k);
  for (int j = 0; j <= count; ++j) {
    const double s = static_cast<double>(j) / count;
    nodes[j] = -k * std::log1p(-s * span);
  }
  nodes.front() = 0.0;
  nodes.back() = T;
  return nodes;
}

// Product integration of t^{beta-1} g(x - t) over consecutive t-nodes. The
// first and last nodes are evaluated one ulp inside so one-sided limits are
// used at jumps; non-finite node values fall back to the interval midpoint.
cplx integrate_segment(const Integrand& g, double x, const std::vector<double>& tn, cplx beta) {
  const std::size_t m = tn.size();
  std::vector<cplx> vals(m);
  for (std::size_t j = 0; j < m; ++j) {
    double y = x - tn[j];
    if (j == 0) y = std::nextafter(y, x - tn[m - 1]);
    if (j == m - 1) y = std::nextafter(y, x - tn[0]);
    vals[j] = g.eval(y);
  }
  auto finite = [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); };
  cplx acc = 0.0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    if (tn[j + 1] <= tn[j]) continue;
    const auto [w0, w1] = linear_moment_weights(tn[j], tn[j + 1], beta);
    cplx v0 = vals[j], v1 = vals[j + 1];
    if (!finite(v0) || !finite(v1)) {
      const cplx mid = g.eval(x - 0.5 * (tn[j] + tn[j + 1]));
      if (!finite(v0)) v0 = mid;
      if (!finite(v1)) v1 = mid;
    }
    acc += w0 * v0 + w1 * v1;
  }
  return acc;
}

// Segments of [a, x] split at interior breakpoints, with subinterval counts
// proportional to length.
struct SegmentPlan {
  std::vector<double> edges;  // ascending in y
  std::vector<int> counts;
};

SegmentPlan plan_segments(const Integrand& g, double a, double x, int total) {
  SegmentPlan plan;
  plan.edges.push_back(a);
  std::vector<double> bps = g.breakpoints;
  std::sort(bps.begin(), bps.end());
  for (double b : bps) {
    if (b > plan.edges.back() && b < x) plan.edges.push_back(b);
  }
  plan.edges.push_back(x);
  const double len = x - a;
  for (std::size_t i = 0; i + 1 < plan.edges.size(); ++i) {
    const double frac = (plan.edges[i + 1] - plan.edges[i]) / len;
    plan.counts.push_back(std::max(16, static_cast<int>(std::lround(total * frac))));
  }
  return plan;
}

// int_a^x (x - y)^{beta - 1} g(y) dy for finite a < x.
cplx weighted_integral(const Integrand& g, double a, double x, cplx beta, const QuadratureConfig& q,
                       const SegmentPlan* fixed_plan = nullptr) {
  SegmentPlan plan = fixed_plan != nullptr ? *fixed_plan : plan_segments(g, a, x, q.subintervals);
  if (fixed_plan != nullptr) {
    plan.edges.front() = a;
    plan.edges.back() = x;
  }
  cplx acc = 0.0;
  for (std::size_t i = 0; i + 1 < plan.edges.size(); ++i) {
    // t runs from x - edges[i+1] to x - edges[i].
    const double t_lo = x - plan.edges[i + 1];
    const double t_hi = x - plan.edges[i];
    acc += integrate_segment(g, x, graded_nodes(t_lo, t_hi, plan.counts[i], q.grading), beta);
  }
  return acc;
}

// Truncation length T with (aT)^{Re beta - 1} e^{-aT} / |Gamma(beta)| below tolerance.
double exponential_tail_length(double rate, cplx beta) {
  const double gabs = std::abs(gamma(beta));
  double at = 1.0;
  while (std::pow(at, beta.real() - 1.0) * std::exp(-at) / gabs > kTailTolerance && at < 2000.0) {
    at += 0.25;
  }
  return at / rate;
}

enum class TailMode { kNone, kFiniteLower, kExponentialMesh };

struct TailPlan {
  TailMode mode = TailMode::kNone;
  double lower = 0.0;  // kFiniteLower
  double length = 0.0;  // kExponentialMesh
  double rate = 0.0;
};

TailPlan plan_tail(const Integrand& g, double x, cplx beta, const QuadratureConfig& q) {
  if (g.decay == DecayClass::kPolynomialGrowth) {
    fail(ErrorCode::kNonConvergent, "integral from -inf diverges for polynomial growth");
  }
  TailPlan plan;
  if (q.truncation_length) {
    if (g.exponential_rate > 0.0) {
      plan.mode = TailMode::kExponentialMesh;
      plan.length = *q.truncation_length;
      plan.rate = g.exponential_rate;
    } else {
      plan.mode = TailMode::kFiniteLower;
      plan.lower = x - *q.truncation_length;
    }
    return plan;
  }
  if (g.lower_cutoff) {
    if (x <= *g.lower_cutoff) return plan;
    plan.mode = TailMode::kFiniteLower;
    plan.lower = *g.lower_cutoff;
    return plan;
  }
  if (g.exponential_rate > 0.0) {
    plan.mode = TailMode::kExponentialMesh;
    plan.rate = g.exponential_rate;
    plan.length = exponential_tail_length(g.exponential_rate, beta);
    return plan;
  }
  fail(ErrorCode::kInvalidArgument, "decaying integrand needs a truncation length");
}

cplx weighted_integral_from_minus_inf(const Integrand& g, double x, cplx beta,
                                      const QuadratureConfig& q, const SegmentPlan* fixed_plan) {
  const TailPlan tail = plan_tail(g, x, beta, q);
  switch (tail.mode) {
    case TailMode::kNone: return 0.0;
    case TailMode::kFiniteLower: return weighted_integral(g, tail.lower, x, beta, q, fixed_plan);
    case TailMode::kExponentialMesh:
      return integrate_segment(
          g, x, exponential_nodes(tail.length, q.subintervals, 3.0 / tail.rate), beta);
  }
  return 0.0;
}

void check_domain(const DifferintOrder& ord, double x) {
  if (ord.base_is_finite() && !(x > *ord.base)) {
    fail(ErrorCode::kDomainOrder, "evaluation point must lie to the right of the base point");
  }
}

cplx integral_core(const Integrand& g, const DifferintOrder& ord, double x, cplx beta,
                   const QuadratureConfig& q, const SegmentPlan* fixed_plan = nullptr) {
  if (ord.base_is_finite()) return weighted_integral(g, *ord.base, x, beta, q, fixed_plan);
  return weighted_integral_from_minus_inf(g, x, beta, q, fixed_plan);
}

// Segment plan for a whole finite-difference stencil, so every stencil point
// sees the same mesh topology.
std::optional<SegmentPlan> stencil_plan(const Integrand& g, const DifferintOrder& ord, double x,
                                        cplx beta, const QuadratureConfig& q) {
  if (ord.base_is_finite()) return plan_segments(g, *ord.base, x, q.subintervals);
  const TailPlan tail = plan_tail(g, x, beta, q);
  if (tail.mode != TailMode::kFiniteLower || q.truncation_length) return std::nullopt;
  return plan_segments(g, tail.lower, x, q.subintervals);
}

cplx finite_difference_derivative(const Integrand& g, const DifferintOrder& ord, double x,
                                  const QuadratureConfig& q, double h) {
  const int n = ord.n();
  const cplx beta = static_cast<double>(n) - ord.nu;
  const double half_span = (n + 1) * h;  // covers the 2h stencil
  for (double b : g.breakpoints) {
    if (std::abs(b - x) <= half_span && !(ord.base_is_finite() && b == *ord.base)) {
      fail(ErrorCode::kNotSmoothEnough, "non-smooth point inside the difference stencil");
    }
  }
  if (ord.base_is_finite() && x - half_span <= *ord.base) {
    fail(ErrorCode::kDomainOrder, "difference stencil crosses the base point");
  }
  const std::optional<SegmentPlan> plan = stencil_plan(g, ord, x, beta, q);
  const cplx rg = rgamma(beta);

  auto estimate = [&](double step) {
    std::vector<double> offsets(n + 2);
    for (int j = 0; j < n + 2; ++j) offsets[j] = (j - 0.5 * (n + 1)) * step;
    const std::vector<double> w = fornberg_weights(0.0, offsets, n);
    cplx acc = 0.0;
    for (int j = 0; j < n + 2; ++j) {
      const double xj = x + offsets[j];
      acc += w[j] * integral_core(g, ord, xj, beta, q, plan ? &*plan : nullptr);
    }
    return acc * rg;
  };
  const cplx fine = estimate(h);
  const cplx coarse = estimate(2.0 * h);
  return (4.0 * fine - coarse) / 3.0;
}

double default_difference_step(const DifferintOrder& ord, double x, int n) {
  const double scale = ord.base_is_finite() ? x - *ord.base : 1.0;
  return 0.02 * scale / (n + 1);
}

}  // namespace

int DifferintOrder::n() const {
  if (nu.real() < 0.0) fail(ErrorCode::kWrongSign, "derivative index requires Re(nu) >= 0");
  return static_cast<int>(std::floor(nu.real())) + 1;
}

void SampledCurve::validate() const {
  if (!(dx > 0.0) || !std::isfinite(dx)) fail(ErrorCode::kInvalidArgument, "sample spacing must be positive");
  if (!std::isfinite(x0)) fail(ErrorCode::kInvalidArgument, "sample origin must be finite");
  if (values.size() < 2) fail(ErrorCode::kInvalidArgument, "need at least two samples");
}

cplx SampledCurve::interpolate(double y) const {
  const double s = (y - x0) / dx;
  const double last = static_cast<double>(values.size() - 1);
  if (!(s >= 0.0) || s > last) return 0.0;
  const auto i = std::min(static_cast<std::size_t>(s), values.size() - 2);
  const double frac = s - static_cast<double>(i);
  return (1.0 - frac) * values[i] + frac * values[i + 1];
}

void QuadratureConfig::validate() const {
  if (subintervals < 8) fail(ErrorCode::kInvalidArgument, "need at least 8 subintervals");
  if (!(grading >= 1.0)) fail(ErrorCode::kInvalidArgument, "grading exponent must be >= 1");
  if (truncation_length && !(*truncation_length > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "truncation length must be positive");
  }
}

Integrand make_integrand(const FunctionSpec& f, int derivative) {
  if (derivative > 0 && !f.has_derivatives()) {
    fail(ErrorCode::kNotSmoothEnough, std::string(to_string(f.kind())) + " has no derivatives");
  }
  Integrand g;
  g.eval = [f, derivative](double y) { return cplx(f.derivative(y, derivative)); };
  g.breakpoints = f.breakpoints();
  g.decay = f.decay_class();
  g.lower_cutoff = f.lower_cutoff();
  g.exponential_rate = f.exponential_rate();
  return g;
}

Integrand make_integrand(const SampledCurve& u) {
  u.validate();
  Integrand g;
  g.eval = [u](double y) { return u.interpolate(y); };
  g.breakpoints = {u.x0, u.x(u.size() - 1)};
  g.decay = DecayClass::kCompactSupport;
  g.lower_cutoff = u.x0;
  return g;
}

cplx rl_integral(const Integrand& f, const DifferintOrder& ord, double x, const QuadratureConfig& q) {
  if (!(ord.nu.real() < 0.0)) fail(ErrorCode::kWrongSign, "fractional integral needs Re(nu) < 0");
  q.validate();
  check_domain(ord, x);
  const cplx beta = -ord.nu;
  return rgamma(beta) * integral_core(f, ord, x, beta, q);
}

cplx rl_integral(const FunctionSpec& f, const DifferintOrder& ord, double x, const QuadratureConfig& q) {
  return rl_integral(make_integrand(f), ord, x, q);
}

cplx rl_integral(const SampledCurve& f, const DifferintOrder& ord, double x, const QuadratureConfig& q) {
  return rl_integral(make_integrand(f), ord, x, q);
}

cplx rl_derivative(const Integrand& f, const DifferintOrder& ord, double x, const QuadratureConfig& q) {
  const int n = ord.n();
  q.validate();
  check_domain(ord, x);
  return finite_difference_derivative(f, ord, x, q, default_difference_step(ord, x, n));
}

cplx rl_derivative(const SampledCurve& f, const DifferintOrder& ord, double x, const QuadratureConfig& q) {
  ord.n();
  q.validate();
  check_domain(ord, x);
  return finite_difference_derivative(make_integrand(f), ord, x, q, 4.0 * f.dx);
}

cplx rl_derivative(const FunctionSpec& f, const DifferintOrder& ord, double x, const QuadratureConfig& q) {
  const int n = ord.n();
  q.validate();
  check_domain(ord, x);
  bool analytic = f.has_derivatives();
  if (q.outer == OuterDerivative::kFiniteDifference) analytic = false;
  if (q.outer == OuterDerivative::kAnalytic && !analytic) {
    fail(ErrorCode::kNotSmoothEnough, std::string(to_string(f.kind())) + " has no derivatives");
  }
  if (!analytic) {
    return finite_difference_derivative(make_integrand(f), ord, x, q,
                                        default_difference_step(ord, x, n));
  }
  if (is_integer_order(ord.nu)) return f.derivative(x, static_cast<int>(ord.nu.real()));

  const cplx beta = static_cast<double>(n) - ord.nu;
  if (!ord.base_is_finite()) {
    return rgamma(beta) * weighted_integral_from_minus_inf(make_integrand(f, n), x, beta, q, nullptr);
  }
  // d^n/dx^n of h^beta J(h), h = x - c, J(h) = int_0^1 (1-s)^{beta-1} f(c + h s) ds.
  const double c = *ord.base;
  const double h = x - c;
  cplx acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    Integrand g = make_integrand(f, k);
    g.eval = [f, k, c](double y) {
      return cplx(std::pow(y - c, k) * f.derivative(y, k));
    };
    const cplx fk = weighted_integral(g, c, x, beta, q);
    acc += binomial(n, k) * falling_factorial(beta, n - k) * fk;
  }
  return rgamma(beta) * acc / std::pow(h, n);
}

cplx caputo_derivative(const FunctionSpec& f, const DifferintOrder& ord, double x,
                       const QuadratureConfig& q) {
  const int n = ord.n();
  if (!f.has_derivatives()) {
    fail(ErrorCode::kNotSmoothEnough, std::string(to_string(f.kind())) + " has no derivatives");
  }
  q.validate();
  check_domain(ord, x);
  if (is_integer_order(ord.nu)) return f.derivative(x, static_cast<int>(ord.nu.real()));
  const DifferintOrder inner{ord.nu - static_cast<double>(n), ord.base};
  return rl_integral(make_integrand(f, n), inner, x, q);
}

cplx hankel_differintegral(const FunctionSpec& f, const DifferintOrder& ord, double x,
                           const HankelContour& contour) {
  if (!f.analytic()) fail(ErrorCode::kNotAnalytic, std::string(to_string(f.kind())) + " is not analytic");
  if (!ord.base_is_finite()) fail(ErrorCode::kInvalidArgument, "contour needs a finite base point");
  if (is_nonpositive_integer(ord.nu + 1.0)) {
    fail(ErrorCode::kInvalidArgument, "negative integer orders are not representable on the loop");
  }
  if (contour.nodes < 64) fail(ErrorCode::kInvalidArgument, "contour needs at least 64 nodes");
  const double c = *ord.base;
  if (!(x > c)) fail(ErrorCode::kDomainOrder, "evaluation point must lie to the right of the base point");
  const double dist = x - c;
  const double r = contour.loop_radius.value_or(0.5 * dist);
  if (!(r > 0.0)) fail(ErrorCode::kInvalidArgument, "loop radius must be positive");
  if (r >= dist) fail(ErrorCode::kBranchCollision, "loop around x reaches the base point");

  const double theta0 = std::asin(0.1);  // cut offset r/10
  const cplx lower_end = x + r * std::polar(1.0, -kPi + theta0);
  const cplx upper_end = x + r * std::polar(1.0, kPi - theta0);
  const double line_len = std::abs(lower_end - c);
  const double arc_len = r * (2.0 * kPi - 2.0 * theta0);
  const double total = 2.0 * line_len + arc_len;
  const int line_nodes = std::max(64, static_cast<int>(contour.nodes * line_len / total));
  const int arc_nodes = std::max(64, contour.nodes - 2 * line_nodes);
  const cplx expo = -ord.nu - 1.0;

  // (y - x)^{-nu-1} with arg(y - x) continued from -pi (lower side) to pi.
  auto kernel = [&](cplx z, double arg) { return std::exp(expo * cplx(std::log(std::abs(z)), arg)); };

  // Trapezoid rule in u on [-3, 3] for s = (1 + tanh(pi/2 sinh u)) / 2.
  auto tanh_sinh = [](int count, auto&& piece) {
    const double hu = 6.0 / count;
    cplx acc = 0.0;
    for (int i = 0; i <= count; ++i) {
      const double u = -3.0 + i * hu;
      const double arg = 0.5 * kPi * std::sinh(u);
      const double s = 0.5 * (1.0 + std::tanh(arg));
      const double ch = std::cosh(arg);
      const double ds = 0.25 * kPi * std::cosh(u) / (ch * ch);
      const double w = (i == 0 || i == count) ? 0.5 : 1.0;
      acc += w * hu * ds * piece(s);
    }
    return acc;
  };

  const cplx lower = tanh_sinh(line_nodes, [&](double s) {
    const cplx y = c + s * (lower_end - c);
    const cplx z = y - x;
    double arg = std::arg(z);
    if (arg > 0.0) arg -= 2.0 * kPi;
    return f.value(y) * kernel(z, arg) * (lower_end - c);
  });
  const cplx arc = tanh_sinh(arc_nodes, [&](double s) {
    const double theta = -kPi + theta0 + s * (2.0 * kPi - 2.0 * theta0);
    const cplx z = r * std::polar(1.0, theta);
    const cplx dz = cplx(0.0, 1.0) * z * (2.0 * kPi - 2.0 * theta0);
    return f.value(x + z) * kernel(z, theta) * dz;
  });
  const cplx upper = tanh_sinh(line_nodes, [&](double s) {
    const cplx y = upper_end + s * (c - upper_end);
    const cplx z = y - x;
    double arg = std::arg(z);
    if (arg < 0.0) arg += 2.0 * kPi;
    return f.value(y) * kernel(z, arg) * (c - upper_end);
  });
  return gamma(ord.nu + 1.0) / cplx(0.0, 2.0 * kPi) * (lower + arc + upper);
}

cplx fourier_multiplier(double lambda, cplx nu) {
  if (lambda == 0.0) return nu == 0.0 ? cplx(1.0) : cplx(0.0);
  const double sgn = lambda > 0.0 ? 1.0 : -1.0;
  return std::exp(nu * cplx(std::log(std::abs(lambda)), -0.5 * kPi * sgn));
}

namespace {

// Upper bound on the periodic image of the power-law tail of D^nu u when the
// box is extended to `padding` times its length.
double wrap_estimate(const SampledCurve& u, cplx nu, int padding, double l1) {
  if (is_integer_order(nu) && nu.real() >= 0.0) return 0.0;
  const std::size_t m = u.size();
  const double len = static_cast<double>(m) * u.dx;
  const double center = u.x0 + 0.5 * len;
  constexpr int kMoments = 6;
  double total = 0.0;
  for (int k = 0; k < kMoments; ++k) {
    cplx moment = 0.0;
    for (std::size_t i = 0; i < m; ++i) moment += u.values[i] * std::pow(u.x(i) - center, k) * u.dx;
    if (std::abs(moment) <= 1e-10 * l1 * std::pow(0.5 * len, k)) continue;
    const double coef = std::abs(moment) / std::tgamma(k + 1.0) * std::abs(rgamma(-nu - static_cast<double>(k)));
    if (coef == 0.0) continue;
    const double expo = -nu.real() - 1.0 - k;
    if (expo >= -1.0) return std::numeric_limits<double>::infinity();
    double images = 0.0;
    for (int j = 1; j <= 256; ++j) images += std::pow((j * padding - 1.0) * len, expo);
    // Integral bound for the remaining images.
    images += std::pow((256.5 * padding - 1.0) * len, expo + 1.0) / (-(expo + 1.0) * padding * len);
    total += coef * images;
  }
  return total;
}

}  // namespace

FourierResult fourier_differint_ex(const SampledCurve& u, cplx nu, const FourierOptions& opt) {
  u.validate();
  const std::size_t m = u.size();
  double peak = 0.0, l1 = 0.0;
  for (const cplx& v : u.values) {
    peak = std::max(peak, std::abs(v));
    l1 += std::abs(v) * u.dx;
  }
  FourierResult result;
  result.curve = u;
  if (peak == 0.0) return result;
  if (std::abs(u.values.front()) > opt.edge_threshold * peak ||
      std::abs(u.values.back()) > opt.edge_threshold * peak) {
    fail(ErrorCode::kEdgeLeakage, "samples do not decay at the box edges");
  }

  cplx dc = 0.0;
  for (const cplx& v : u.values) dc += v * u.dx;
  cplx dc_factor = 0.0;
  if (nu == 0.0) {
    dc_factor = 1.0;
  } else if (nu.real() <= 0.0 && std::abs(dc) > 1e-10 * l1) {
    fail(ErrorCode::kDCUndefined, "whole-line fractional integral of content with nonzero mean");
  }

  int padding = 1;
  double wrap = wrap_estimate(u, nu, padding, l1);
  while (wrap > opt.wrap_tolerance * peak) {
    if (padding * 2 > opt.max_padding) {
      fail(ErrorCode::kEdgeLeakage, "periodic wrap-around exceeds tolerance at the largest padding");
    }
    padding *= 2;
    wrap = wrap_estimate(u, nu, padding, l1);
  }
  result.padding = padding;
  result.wrap_estimate = wrap;

  const std::size_t mp = m * static_cast<std::size_t>(padding);
  const std::size_t offset = (mp - m) / 2;
  std::vector<cplx> buf(mp, 0.0);
  std::copy(u.values.begin(), u.values.end(), buf.begin() + static_cast<std::ptrdiff_t>(offset));
  const std::vector<int> extents{static_cast<int>(mp)};
  dft_inplace(buf, extents, FftSign::kPositive);
  const double box = static_cast<double>(mp) * u.dx;
  for (std::size_t q = 0; q < mp; ++q) {
    const int k = signed_frequency(static_cast<int>(q), static_cast<int>(mp));
    buf[q] *= k == 0 ? dc_factor : fourier_multiplier(2.0 * kPi * k / box, nu);
  }
  dft_inplace(buf, extents, FftSign::kNegative);
  for (std::size_t i = 0; i < m; ++i) result.curve.values[i] = buf[offset + i] / static_cast<double>(mp);
  return result;
}

SampledCurve fourier_differint(const SampledCurve& u, cplx nu, const FourierOptions& opt) {
  return fourier_differint_ex(u, nu, opt).curve;
}

OracleValue closed_form_oracle(const FunctionSpec& f, cplx nu, double x) {
  if (f.kind() == FunctionKind::kPower) {
    const double p = f.params()[0];
    if (!(x > 0.0)) fail(ErrorCode::kDomainOrder, "power oracle needs x > 0");
    const cplx denom_arg = p + 1.0 - nu;
    if (is_nonpositive_integer(denom_arg)) return {0.0, true};
    const cplx value = std::tgamma(p + 1.0) * rgamma(denom_arg) * std::exp((p - nu) * std::log(x));
    return {value, false};
  }
  if (f.kind() == FunctionKind::kExponential) {
    const double a = f.params()[0];
    return {std::exp(nu * std::log(a) + a * x), false};
  }
  fail(ErrorCode::kInvalidArgument, "closed-form oracle covers power and exponential only");
}

std::vector<double> fornberg_weights(double z, const std::vector<double>& nodes, int k) {
  const int n = static_cast<int>(nodes.size()) - 1;
  if (k < 0 || k > n) fail(ErrorCode::kInvalidArgument, "derivative order exceeds stencil size");
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(k + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, k);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int s = mn; s >= 1; --s) c[i][s] = c1 * (s * c[i - 1][s - 1] - c5 * c[i - 1][s]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int s = mn; s >= 1; --s) c[j][s] = (c4 * c[j][s] - s * c[j][s - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = c[i][k];
  return w;
}

}  // namespace fracell
