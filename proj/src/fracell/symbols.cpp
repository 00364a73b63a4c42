#include "fracell/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "fracell/special.hpp"

namespace fracell {

namespace {

using nlohmann::json;

double round12(double v) { return std::round(v * 1e12) / 1e12; }

std::vector<double> rounded_key(const FracMultiIndex& index) {
  std::vector<double> key;
  key.reserve(index.alpha.size());
  for (double a : index.alpha) key.push_back(round12(a));
  return key;
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void normalize(std::vector<double>& v) {
  const double n = norm(v);
  for (double& x : v) x /= n;
}

}  // namespace

double FracMultiIndex::magnitude() const {
  double s = 0.0;
  for (double a : alpha) s += a;
  return s;
}

void FracMultiIndex::validate() const {
  if (alpha.empty()) fail(ErrorCode::kInvalidArgument, "multi-index needs at least one component");
  for (double a : alpha) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      fail(ErrorCode::kInvalidArgument, "multi-index components must be finite and nonnegative");
    }
  }
}

double rounded_magnitude(const FracMultiIndex& index) { return round12(index.magnitude()); }

FracSymbol::FracSymbol(int dim, std::vector<SymbolTerm> terms) : dim_(dim) {
  if (dim < 1) fail(ErrorCode::kInvalidArgument, "symbol dimension must be positive");
  std::map<std::vector<double>, std::size_t> seen;
  for (auto& t : terms) {
    t.index.validate();
    if (static_cast<int>(t.index.alpha.size()) != dim) {
      fail(ErrorCode::kDimensionMismatch, "multi-index length differs from symbol dimension");
    }
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
      fail(ErrorCode::kInvalidArgument, "symbol coefficient must be finite");
    }
    const auto key = rounded_key(t.index);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, terms_.size());
      terms_.push_back(std::move(t));
    } else {
      terms_[it->second].coeff += t.coeff;
    }
  }
  std::erase_if(terms_, [](const SymbolTerm& t) { return t.coeff == 0.0; });
  if (terms_.empty()) fail(ErrorCode::kInvalidArgument, "symbol has no nonzero terms");
}

FracSymbol FracSymbol::from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("terms")) {
    fail(ErrorCode::kParseError, "operator JSON needs 'dim' and 'terms'");
  }
  if (!j.at("dim").is_number_integer()) fail(ErrorCode::kParseError, "'dim' must be an integer");
  if (!j.at("terms").is_array()) fail(ErrorCode::kParseError, "'terms' must be an array");
  const int dim = j.at("dim").get<int>();
  std::vector<SymbolTerm> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("c") || !t.contains("alpha")) {
      fail(ErrorCode::kParseError, "each term needs 'c' and 'alpha'");
    }
    SymbolTerm term;
    const auto& c = t.at("c");
    if (c.is_number()) {
      term.coeff = c.get<double>();
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      term.coeff = {c[0].get<double>(), c[1].get<double>()};
    } else {
      fail(ErrorCode::kParseError, "'c' must be a number or [re, im]");
    }
    if (!t.at("alpha").is_array()) fail(ErrorCode::kParseError, "'alpha' must be an array");
    for (const auto& a : t.at("alpha")) {
      if (!a.is_number()) fail(ErrorCode::kParseError, "'alpha' entries must be numbers");
      term.index.alpha.push_back(a.get<double>());
    }
    terms.push_back(std::move(term));
  }
  return FracSymbol(dim, std::move(terms));
}

FracSymbol FracSymbol::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, std::string("invalid operator JSON: ") + e.what());
  }
  return from_json(j);
}

json FracSymbol::to_json() const {
  json terms = json::array();
  for (const auto& t : terms_) {
    terms.push_back({{"c", {t.coeff.real(), t.coeff.imag()}}, {"alpha", t.index.alpha}});
  }
  return {{"dim", dim_}, {"terms", terms}};
}

cplx FracSymbol::eval(std::span<const double> lambda) const {
  if (static_cast<int>(lambda.size()) != dim_) {
    fail(ErrorCode::kDimensionMismatch, "frequency vector length differs from symbol dimension");
  }
  cplx acc = 0.0;
  for (const auto& t : terms_) {
    double mag = 1.0;
    double phase = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const double a = t.index.alpha[i];
      if (a == 0.0) continue;
      const double l = lambda[i];
      if (l == 0.0) {
        mag = 0.0;
        break;
      }
      mag *= std::pow(std::abs(l), a);
      if (l < 0.0) phase += kPi * a;
    }
    if (mag == 0.0) continue;
    acc += t.coeff * (phase == 0.0 ? cplx(mag) : std::polar(mag, phase));
  }
  return acc;
}

double FracSymbol::max_coefficient() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

cplx symbol_eval(const FracSymbol& p, std::span<const double> lambda) { return p.eval(lambda); }

OrderGap order_and_gap(const FracSymbol& p) {
  double nu = -1.0;
  for (const auto& t : p.terms()) nu = std::max(nu, rounded_magnitude(t.index));
  double below = -1.0;
  for (const auto& t : p.terms()) {
    const double m = rounded_magnitude(t.index);
    if (m < nu) below = std::max(below, m);
  }
  OrderGap g;
  g.nu = nu;
  g.homogeneous = below < 0.0;
  g.epsilon = g.homogeneous ? nu : nu - below;
  return g;
}

FracSymbol principal_symbol(const FracSymbol& p) {
  const double nu = order_and_gap(p).nu;
  std::vector<SymbolTerm> top;
  for (const auto& t : p.terms()) {
    if (rounded_magnitude(t.index) == nu) top.push_back(t);
  }
  return FracSymbol(p.dim(), std::move(top));
}

FracSymbol multiply(const FracSymbol& p, const FracSymbol& q) {
  if (p.dim() != q.dim()) fail(ErrorCode::kDimensionMismatch, "symbol dimensions differ");
  std::vector<SymbolTerm> terms;
  for (const auto& a : p.terms()) {
    for (const auto& b : q.terms()) {
      SymbolTerm t;
      t.coeff = a.coeff * b.coeff;
      t.index.alpha.resize(p.dim());
      for (int i = 0; i < p.dim(); ++i) t.index.alpha[i] = a.index.alpha[i] + b.index.alpha[i];
      terms.push_back(std::move(t));
    }
  }
  return FracSymbol(p.dim(), std::move(terms));
}

std::vector<std::vector<double>> sphere_directions(int dim, int count, std::uint64_t seed) {
  std::vector<std::vector<double>> dirs;
  if (dim == 1) return {{-1.0}, {1.0}};
  if (dim == 2) {
    for (int j = 0; j < count; ++j) {
      const double th = 2.0 * kPi * j / count;
      dirs.push_back({std::cos(th), std::sin(th)});
    }
    return dirs;
  }
  if (dim == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < count; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / count;
      const double rho = std::sqrt(1.0 - z * z);
      dirs.push_back({rho * std::cos(golden * j), rho * std::sin(golden * j), z});
    }
    return dirs;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int j = 0; j < count; ++j) {
    std::vector<double> v(dim);
    do {
      for (double& x : v) x = normal(rng);
    } while (norm(v) == 0.0);
    normalize(v);
    dirs.push_back(std::move(v));
  }
  return dirs;
}

EllipticityReport check_ellipticity(const FracSymbol& p, const EllipticityOptions& opt) {
  const int n = p.dim();
  int samples = opt.samples > 0 ? opt.samples : std::max(64 * n, 1024);
  if (samples < 64 * n) fail(ErrorCode::kInvalidArgument, "ellipticity scan needs at least 64 n samples");
  if (n == 2) samples = (samples + 7) / 8 * 8;  // keeps the diagonals on the grid
  const FracSymbol sigma = principal_symbol(p);

  EllipticityReport rep;
  rep.threshold = opt.threshold >= 0.0 ? opt.threshold : 1e-9 * sigma.max_coefficient();
  const auto dirs = sphere_directions(n, samples, opt.seed);
  rep.samples = static_cast<int>(dirs.size());

  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) ranked.emplace_back(std::abs(sigma.eval(dirs[i])), i);
  std::sort(ranked.begin(), ranked.end());
  rep.min_abs_sigma = ranked.front().first;
  rep.witness = dirs[ranked.front().second];

  // Pattern search on the sphere from the best few samples.
  if (n >= 2) {
    const std::size_t starts = std::min<std::size_t>(4, ranked.size());
    const double step0 = n == 2 ? 2.0 * kPi / samples : 2.0 / std::sqrt(static_cast<double>(samples));
    for (std::size_t s = 0; s < starts; ++s) {
      std::vector<double> x = dirs[ranked[s].second];
      double fx = ranked[s].first;
      for (double step = step0; step > 1e-15; step *= 0.5) {
        bool improved = true;
        while (improved) {
          improved = false;
          for (int i = 0; i < n; ++i) {
            for (double sgn : {1.0, -1.0}) {
              std::vector<double> y = x;
              y[i] += sgn * step;
              normalize(y);
              const double fy = std::abs(sigma.eval(y));
              if (fy < fx) {
                x = std::move(y);
                fx = fy;
                improved = true;
              }
            }
          }
        }
      }
      if (fx < rep.min_abs_sigma) {
        rep.min_abs_sigma = fx;
        rep.witness = x;
      }
    }
  }
  rep.elliptic = rep.min_abs_sigma > rep.threshold;
  return rep;
}

SymbolBounds estimate_bounds(const FracSymbol& p, double scan_max, int samples) {
  if (!(scan_max > 1.0)) fail(ErrorCode::kInvalidArgument, "scan_max must exceed 1");
  if (samples < 16) fail(ErrorCode::kInvalidArgument, "need at least 16 radii");
  const EllipticityReport ell = check_ellipticity(p);
  if (!ell.elliptic) fail(ErrorCode::kNotElliptic, "symbol is not elliptic");

  const int n = p.dim();
  const OrderGap og = order_and_gap(p);
  auto dirs = sphere_directions(n, n == 1 ? 2 : 256 * (n - 1));
  dirs.push_back(ell.witness);

  std::vector<double> radii(samples);
  for (int i = 0; i < samples; ++i) {
    radii[i] = std::exp(std::log(scan_max) * i / (samples - 1));
  }
  radii.back() = scan_max;

  auto lower_bound_sum = [&](double r) {
    double s = 0.0;
    for (const auto& t : p.terms()) {
      if (rounded_magnitude(t.index) < og.nu) s += std::abs(t.coeff) * std::pow(r, t.index.magnitude());
    }
    return s;
  };

  SymbolBounds b;
  b.scan_max = scan_max;
  b.samples = samples;
  int first = -1;
  for (int i = samples - 1; i >= 0; --i) {
    if (ell.min_abs_sigma * std::pow(radii[i], og.nu) > 2.0 * lower_bound_sum(radii[i])) {
      first = i;
    } else {
      break;
    }
  }
  if (first < 0) return b;

  double inf = std::numeric_limits<double>::infinity();
  std::vector<double> lam(n);
  for (int i = first; i < samples; ++i) {
    const double r = radii[i];
    const double weight = std::pow(1.0 + r * r, 0.5 * og.nu);
    for (const auto& d : dirs) {
      for (int k = 0; k < n; ++k) lam[k] = r * d[k];
      inf = std::min(inf, std::abs(p.eval(lam)) / weight);
    }
  }
  b.found = inf > 0.0;
  b.R = std::max(1.0, radii[first]);
  b.C = 0.99 * inf;
  return b;
}

}  // namespace fracell
