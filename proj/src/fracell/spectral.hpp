#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fracell/error.hpp"
#include "fracell/function_spec.hpp"
#include "fracell/symbols.hpp"

namespace fracell {

// Periodic box [-L/2, L/2)^n with m points per axis.
struct BoxGrid {
  int dim = 1;
  double extent = 1.0;
  int points = 16;

  void validate() const;
  std::size_t size() const;
  double spacing() const { return extent / points; }
  double frequency_step() const;
  double nyquist() const;
  double coordinate(int i) const { return -0.5 * extent + i * spacing(); }
  std::vector<int> extents() const { return std::vector<int>(dim, points); }

  bool operator==(const BoxGrid&) const = default;
};

// Row-major samples, last axis fastest.
struct Field {
  BoxGrid grid;
  std::vector<cplx> values;

  static Field zeros(const BoxGrid& grid);
  void validate() const;
};

// Coefficients approximating u_hat(lambda) = int u(x) exp(i lambda.x) dx,
// stored in FFT order; lambda = 2 pi k / L with k in [-m/2, m/2).
struct SpectralField {
  BoxGrid grid;
  std::vector<cplx> coeffs;
};

SpectralField transform(const Field& u);
Field inverse(const SpectralField& u);

// Calls fn(flat_index, lambda) for every grid frequency.
void for_each_frequency(const BoxGrid& grid,
                        const std::function<void(std::size_t, std::span<const double>)>& fn);

Field apply_operator(const FracSymbol& p, const Field& u);

// Largest boundary sample magnitude relative to max |u|.
double edge_ratio(const Field& u);

// Smooth radial cutoff: 1 for r <= R, 0 for r >= R + 1.
double cutoff_value(double r, double R);
std::vector<double> build_cutoff(const BoxGrid& grid, double R);

struct Parametrix {
  FracSymbol symbol;
  BoxGrid grid;
  double R = 0.0;
  std::vector<cplx> e_hat;
  std::vector<double> chi;

  // omega_hat = -chi.
  std::vector<double> omega_hat() const;
};

Parametrix build_parametrix(const FracSymbol& p, const BoxGrid& grid,
                            std::optional<double> R_hint = std::nullopt);

struct EllipticSolution {
  Field u;
  // P(D) u - f, formed in frequency space as (P E_hat - 1) f_hat.
  Field residual;
  double R = 0.0;
};

EllipticSolution solve_elliptic(const FracSymbol& p, const Field& f,
                                std::optional<double> R_hint = std::nullopt);
EllipticSolution solve_elliptic(const Parametrix& e, const Field& f);

Field convolve(const Field& f, const Field& g);

// Tensor product f_1(x_1) ... f_n(x_n); a single spec is reused on every axis.
Field sample_function(const BoxGrid& grid, const std::vector<FunctionSpec>& axes);

// Field whose transform is spectrum(lambda).
Field field_from_spectrum(const BoxGrid& grid,
                          const std::function<cplx(std::span<const double>)>& spectrum);

}  // namespace fracell
