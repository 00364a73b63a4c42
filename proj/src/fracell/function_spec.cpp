#include "fracell/function_spec.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fracell/special.hpp"

namespace fracell {

namespace {

using nlohmann::json;

// Derivatives of g(t) = -1/(1-t^2), the exponent of the bump.
double bump_exponent_derivative(int m, double t) {
  const double fact = std::tgamma(m + 1.0);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return -0.5 * fact * (1.0 / std::pow(1.0 - t, m + 1) + sign / std::pow(1.0 + t, m + 1));
}

// h = exp(g); h^{(k)} = sum_j C(k-1, j) g^{(j+1)} h^{(k-1-j)}.
double bump_derivative(int k, double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  std::vector<double> h(k + 1);
  h[0] = std::exp(-1.0 / (1.0 - t * t));
  if (h[0] == 0.0) return 0.0;
  for (int order = 1; order <= k; ++order) {
    double acc = 0.0;
    for (int j = 0; j < order; ++j) {
      acc += binomial(order - 1, j) * bump_exponent_derivative(j + 1, t) * h[order - 1 - j];
    }
    h[order] = acc;
  }
  return h[k];
}

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) {
    fail(ErrorCode::kParseError, std::string("field '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::kParseError, std::string("missing field '") + key + "'");
  return number_or(j, key, 0.0);
}

}  // namespace

const char* to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::kPower: return "power";
    case FunctionKind::kExponential: return "exponential";
    case FunctionKind::kGaussian: return "gaussian";
    case FunctionKind::kStep: return "step";
    case FunctionKind::kBump: return "bump";
    case FunctionKind::kPolynomial: return "polynomial";
  }
  return "unknown";
}

const char* to_string(DecayClass decay) {
  switch (decay) {
    case DecayClass::kCompactSupport: return "compact-support";
    case DecayClass::kExponentialDecay: return "exponential-decay";
    case DecayClass::kPolynomialGrowth: return "polynomial-growth";
  }
  return "unknown";
}

FunctionSpec FunctionSpec::power(double p) {
  if (!(p > -1.0)) fail(ErrorCode::kInvalidArgument, "power: exponent must exceed -1");
  return FunctionSpec(FunctionKind::kPower, {p});
}

FunctionSpec FunctionSpec::exponential(double a) {
  if (!(a > 0.0)) fail(ErrorCode::kInvalidArgument, "exponential: rate must be positive");
  return FunctionSpec(FunctionKind::kExponential, {a});
}

FunctionSpec FunctionSpec::gaussian(double center, double width) {
  if (!(width > 0.0) || !std::isfinite(center)) {
    fail(ErrorCode::kInvalidArgument, "gaussian: width must be positive");
  }
  return FunctionSpec(FunctionKind::kGaussian, {center, width});
}

FunctionSpec FunctionSpec::step(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    fail(ErrorCode::kInvalidArgument, "step: need a < b");
  }
  return FunctionSpec(FunctionKind::kStep, {a, b});
}

FunctionSpec FunctionSpec::bump(double center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(center)) {
    fail(ErrorCode::kInvalidArgument, "bump: radius must be positive");
  }
  return FunctionSpec(FunctionKind::kBump, {center, radius});
}

FunctionSpec FunctionSpec::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) fail(ErrorCode::kInvalidArgument, "polynomial: no coefficients");
  for (double c : coeffs) {
    if (!std::isfinite(c)) fail(ErrorCode::kInvalidArgument, "polynomial: non-finite coefficient");
  }
  return FunctionSpec(FunctionKind::kPolynomial, std::move(coeffs));
}

bool FunctionSpec::analytic() const {
  switch (kind_) {
    case FunctionKind::kStep:
    case FunctionKind::kBump: return false;
    case FunctionKind::kPower: return params_[0] >= 0.0 && params_[0] == std::floor(params_[0]);
    default: return true;
  }
}

DecayClass FunctionSpec::decay_class() const {
  switch (kind_) {
    case FunctionKind::kPower:
    case FunctionKind::kPolynomial: return DecayClass::kPolynomialGrowth;
    case FunctionKind::kExponential:
    case FunctionKind::kGaussian: return DecayClass::kExponentialDecay;
    case FunctionKind::kStep:
    case FunctionKind::kBump: return DecayClass::kCompactSupport;
  }
  return DecayClass::kPolynomialGrowth;
}

double FunctionSpec::derivative(double y, int k) const {
  if (k < 0) fail(ErrorCode::kInvalidArgument, "derivative order must be nonnegative");
  switch (kind_) {
    case FunctionKind::kPower: {
      const double p = params_[0];
      if (y < 0.0) return 0.0;
      const double coef = falling_factorial(p, k).real();
      if (coef == 0.0) return 0.0;
      if (y == 0.0) {
        if (p - k > 0.0) return 0.0;
        if (p - k == 0.0) return coef;
        return std::numeric_limits<double>::infinity();
      }
      return coef * std::pow(y, p - k);
    }
    case FunctionKind::kExponential: {
      const double a = params_[0];
      return std::pow(a, k) * std::exp(a * y);
    }
    case FunctionKind::kGaussian: {
      const double w = params_[1];
      const double t = (y - params_[0]) / w;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      return sign * hermite_he(k, t) * std::exp(-0.5 * t * t) / std::pow(w, k);
    }
    case FunctionKind::kStep: {
      if (k > 0) fail(ErrorCode::kNotSmoothEnough, "step has no classical derivatives");
      const double a = params_[0], b = params_[1];
      if (y > a && y < b) return 1.0;
      if (y == a || y == b) return 0.5;
      return 0.0;
    }
    case FunctionKind::kBump: {
      const double r = params_[1];
      return bump_derivative(k, (y - params_[0]) / r) / std::pow(r, k);
    }
    case FunctionKind::kPolynomial: {
      double acc = 0.0;
      for (std::size_t j = params_.size(); j-- > static_cast<std::size_t>(k);) {
        acc = acc * y + params_[j] * falling_factorial(static_cast<double>(j), k).real();
      }
      return acc;
    }
  }
  return 0.0;
}

cplx FunctionSpec::value(cplx y) const {
  switch (kind_) {
    case FunctionKind::kPower: {
      const double p = params_[0];
      if (!analytic()) {
        fail(ErrorCode::kNotAnalytic, "power with non-integer exponent has a branch point at 0");
      }
      return std::pow(y, static_cast<int>(p));
    }
    case FunctionKind::kExponential: return std::exp(params_[0] * y);
    case FunctionKind::kGaussian: {
      const cplx t = (y - params_[0]) / params_[1];
      return std::exp(-0.5 * t * t);
    }
    case FunctionKind::kPolynomial: {
      cplx acc = 0.0;
      for (std::size_t j = params_.size(); j-- > 0;) acc = acc * y + params_[j];
      return acc;
    }
    case FunctionKind::kStep:
    case FunctionKind::kBump: break;
  }
  fail(ErrorCode::kNotAnalytic, std::string(to_string(kind_)) + " is not analytic");
}

std::vector<double> FunctionSpec::breakpoints() const {
  switch (kind_) {
    case FunctionKind::kPower: return {0.0};
    case FunctionKind::kStep: return {params_[0], params_[1]};
    case FunctionKind::kBump: return {params_[0] - params_[1], params_[0] + params_[1]};
    default: return {};
  }
}

std::optional<double> FunctionSpec::lower_cutoff() const {
  switch (kind_) {
    case FunctionKind::kGaussian: return params_[0] - 9.0 * params_[1];
    case FunctionKind::kStep: return params_[0];
    case FunctionKind::kBump: return params_[0] - params_[1];
    default: return std::nullopt;
  }
}

double FunctionSpec::exponential_rate() const {
  return kind_ == FunctionKind::kExponential ? params_[0] : 0.0;
}

json FunctionSpec::to_json() const {
  json j;
  j["kind"] = to_string(kind_);
  switch (kind_) {
    case FunctionKind::kPower: j["p"] = params_[0]; break;
    case FunctionKind::kExponential: j["a"] = params_[0]; break;
    case FunctionKind::kGaussian:
      j["center"] = params_[0];
      j["width"] = params_[1];
      break;
    case FunctionKind::kStep:
      j["a"] = params_[0];
      j["b"] = params_[1];
      break;
    case FunctionKind::kBump:
      j["center"] = params_[0];
      j["radius"] = params_[1];
      break;
    case FunctionKind::kPolynomial: j["coeffs"] = params_; break;
  }
  return j;
}

FunctionSpec FunctionSpec::from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    fail(ErrorCode::kParseError, "function spec must be an object with a string 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") return power(require_number(j, "p"));
  if (kind == "exponential" || kind == "exp") return exponential(number_or(j, "a", 1.0));
  if (kind == "gaussian") return gaussian(number_or(j, "center", 0.0), number_or(j, "width", 1.0));
  if (kind == "step") return step(number_or(j, "a", -1.0), number_or(j, "b", 1.0));
  if (kind == "bump") return bump(number_or(j, "center", 0.0), number_or(j, "radius", 1.0));
  if (kind == "polynomial") {
    if (!j.contains("coeffs") || !j.at("coeffs").is_array()) {
      fail(ErrorCode::kParseError, "polynomial needs a 'coeffs' array");
    }
    std::vector<double> coeffs;
    for (const auto& c : j.at("coeffs")) {
      if (!c.is_number()) fail(ErrorCode::kParseError, "polynomial coefficients must be numbers");
      coeffs.push_back(c.get<double>());
    }
    return polynomial(std::move(coeffs));
  }
  fail(ErrorCode::kParseError, "unknown function kind '" + kind + "'");
}

std::vector<std::string> catalog_names() { return {"gaussian", "step", "bump", "power", "exp"}; }

FunctionSpec catalog_lookup(const std::string& name) {
  if (name == "gaussian") return FunctionSpec::gaussian(0.0, 1.0);
  if (name == "step") return FunctionSpec::step(-1.0, 1.0);
  if (name == "bump") return FunctionSpec::bump(0.0, 1.0);
  if (name == "power") return FunctionSpec::power(1.0);
  if (name == "exp") return FunctionSpec::exponential(1.0);
  std::ostringstream msg;
  msg << "unknown catalog entry '" << name << "'; available:";
  for (const auto& n : catalog_names()) msg << ' ' << n;
  fail(ErrorCode::kUnknownCatalogEntry, msg.str());
}

FunctionSpec parse_function(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      fail(ErrorCode::kParseError, std::string("invalid function JSON: ") + e.what());
    }
    return FunctionSpec::from_json(j);
  }
  return catalog_lookup(text);
}

}  // namespace fracell
