#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fracell/error.hpp"
#include "json.hpp"

namespace fracell {

struct FracMultiIndex {
  std::vector<double> alpha;

  double magnitude() const;
  void validate() const;
};

struct SymbolTerm {
  cplx coeff;
  FracMultiIndex index;
};

// P(lambda) = sum_alpha c_alpha lambda^alpha on R^n. Construction merges terms
// whose exponents agree to 12 digits and drops zero coefficients.
class FracSymbol {
 public:
  FracSymbol(int dim, std::vector<SymbolTerm> terms);

  static FracSymbol from_json(const nlohmann::json& j);
  static FracSymbol parse(const std::string& text);
  nlohmann::json to_json() const;

  int dim() const { return dim_; }
  const std::vector<SymbolTerm>& terms() const { return terms_; }

  // lambda_i^a is |lambda_i|^a e^{i pi a} for lambda_i < 0; 0^a = 0 for a > 0 and 0^0 = 1.
  cplx eval(std::span<const double> lambda) const;

  double max_coefficient() const;

 private:
  int dim_;
  std::vector<SymbolTerm> terms_;
};

cplx symbol_eval(const FracSymbol& p, std::span<const double> lambda);

// Rounds |alpha| to 12 decimal digits for level comparisons.
double rounded_magnitude(const FracMultiIndex& index);

struct OrderGap {
  double nu = 0.0;
  double epsilon = 0.0;
  bool homogeneous = false;
};

OrderGap order_and_gap(const FracSymbol& p);
FracSymbol principal_symbol(const FracSymbol& p);

// Term-by-term product; exact on the real axis under the branch of eval().
FracSymbol multiply(const FracSymbol& p, const FracSymbol& q);

struct EllipticityReport {
  bool elliptic = false;
  double min_abs_sigma = 0.0;
  std::vector<double> witness;
  int samples = 0;
  double threshold = 0.0;
};

struct EllipticityOptions {
  int samples = 0;          // 0 picks max(64 n, 1024)
  double threshold = -1.0;  // negative picks 1e-9 max |c| of the principal part
  std::uint64_t seed = 12345;
};

EllipticityReport check_ellipticity(const FracSymbol& p, const EllipticityOptions& opt = {});

struct SymbolBounds {
  bool found = false;
  double R = 0.0;
  double C = 0.0;
  double scan_max = 0.0;
  int samples = 0;
};

// Scans a logarithmic radius grid from 1 to scan_max. R is the first grid
// radius beyond which the principal part dominates twice the lower-order
// terms; C is 0.99 times the sampled infimum of |P| / (1 + |lambda|^2)^{nu/2}
// for |lambda| in [R, scan_max].
SymbolBounds estimate_bounds(const FracSymbol& p, double scan_max = 1e4, int samples = 200);

// Quasi-uniform unit vectors: {-1, +1} in 1-D, equispaced circle in 2-D,
// Fibonacci sphere in 3-D, seeded Gaussian directions beyond.
std::vector<std::vector<double>> sphere_directions(int dim, int count, std::uint64_t seed = 12345);

}  // namespace fracell
