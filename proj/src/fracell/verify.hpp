#pragma once

#include <array>
#include <string>
#include <vector>

#include "fracell/fracops.hpp"
#include "fracell/function_spec.hpp"
#include "json.hpp"

namespace fracell {

struct CheckResult {
  std::string check_id;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  // The two code paths whose outputs were compared.
  std::array<std::string, 2> engines;
  nlohmann::json details;
};

struct VerifyConfig {
  QuadratureConfig quadrature;
  double tol_quadrature = 1e-6;
  double tol_fourier = 1e-4;
  double tol_convolution = 1e-5;
  double tol_series = 1e-10;
  double tol_parametrix = 1e-13;
  int fourier_points = 4096;
  double fourier_extent = 40.0;
};

// Every implemented identity check, in report order.
std::vector<std::string> identity_check_ids();

// Runs the selected checks (all of them when the selector is empty), in the
// order of identity_check_ids(). Throws UnknownCheckId for unlisted ids.
std::vector<CheckResult> run_identity_suite(const std::vector<std::string>& selector,
                                            const VerifyConfig& config = {});

struct CommutatorConfig {
  double extent = 8.0;
  int points = 4096;
  double regularity_margin = 0.2;
  double exact_tolerance = 1e-8;
};

// [D^alpha, phi] u = D^alpha(phi u) - phi D^alpha u on a periodic grid.
// Non-integer alpha: regularity of the commutator against t - alpha + 1 and of
// D^alpha(phi u) against t - alpha, where t is the estimated regularity of u.
// Integer alpha (0 or 1) with smooth u: pointwise against 0 or i phi' u.
CheckResult run_commutator_check(double alpha, const FunctionSpec& u, const FunctionSpec& phi,
                                 const CommutatorConfig& config = {});

nlohmann::json to_json(const CheckResult& r);

}  // namespace fracell
