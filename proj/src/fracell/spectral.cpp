#include "fracell/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "fracell/fft.hpp"
#include "fracell/special.hpp"

namespace fracell {

namespace {

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

// exp(i lambda x0) with x0 = -L/2 reduces to (-1)^k on each axis.
double corner_phase(const BoxGrid& grid, std::size_t flat) {
  int parity = 0;
  for (int d = 0; d < grid.dim; ++d) {
    parity += static_cast<int>(flat % grid.points);
    flat /= grid.points;
  }
  return parity % 2 == 0 ? 1.0 : -1.0;
}

void require_same_grid(const BoxGrid& a, const BoxGrid& b) {
  if (!(a == b)) fail(ErrorCode::kDimensionMismatch, "fields live on different grids");
}

}  // namespace

void BoxGrid::validate() const {
  if (dim < 1 || dim > 3) fail(ErrorCode::kInvalidArgument, "grid dimension must be 1, 2 or 3");
  if (!(extent > 0.0) || !std::isfinite(extent)) fail(ErrorCode::kInvalidArgument, "box extent must be positive");
  if (points < 16 || !is_power_of_two(points)) {
    fail(ErrorCode::kInvalidArgument, "points per axis must be a power of two >= 16");
  }
}

std::size_t BoxGrid::size() const {
  std::size_t s = 1;
  for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(points);
  return s;
}

double BoxGrid::frequency_step() const { return 2.0 * kPi / extent; }

double BoxGrid::nyquist() const { return kPi * points / extent; }

Field Field::zeros(const BoxGrid& grid) {
  grid.validate();
  return {grid, std::vector<cplx>(grid.size(), 0.0)};
}

void Field::validate() const {
  grid.validate();
  if (values.size() != grid.size()) fail(ErrorCode::kDimensionMismatch, "sample count differs from grid size");
}

void for_each_frequency(const BoxGrid& grid,
                        const std::function<void(std::size_t, std::span<const double>)>& fn) {
  const std::size_t total = grid.size();
  const double dl = grid.frequency_step();
  std::vector<double> lambda(grid.dim);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int d = grid.dim - 1; d >= 0; --d) {
      const int q = static_cast<int>(rest % grid.points);
      rest /= grid.points;
      lambda[d] = dl * signed_frequency(q, grid.points);
    }
    fn(flat, lambda);
  }
}

SpectralField transform(const Field& u) {
  u.validate();
  SpectralField out{u.grid, u.values};
  dft_inplace(out.coeffs, u.grid.extents(), FftSign::kPositive);
  const double scale = std::pow(u.grid.spacing(), u.grid.dim);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] *= scale * corner_phase(u.grid, i);
  return out;
}

Field inverse(const SpectralField& s) {
  s.grid.validate();
  if (s.coeffs.size() != s.grid.size()) fail(ErrorCode::kDimensionMismatch, "coefficient count differs from grid size");
  Field out{s.grid, s.coeffs};
  const double scale = 1.0 / std::pow(s.grid.extent, s.grid.dim);
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= scale * corner_phase(s.grid, i);
  dft_inplace(out.values, s.grid.extents(), FftSign::kNegative);
  return out;
}

Field apply_operator(const FracSymbol& p, const Field& u) {
  if (p.dim() != u.grid.dim) fail(ErrorCode::kDimensionMismatch, "operator and field dimensions differ");
  SpectralField s = transform(u);
  for_each_frequency(u.grid, [&](std::size_t i, std::span<const double> lam) { s.coeffs[i] *= p.eval(lam); });
  return inverse(s);
}

double edge_ratio(const Field& u) {
  u.validate();
  const int m = u.grid.points;
  double peak = 0.0, edge = 0.0;
  for (std::size_t flat = 0; flat < u.values.size(); ++flat) {
    const double a = std::abs(u.values[flat]);
    peak = std::max(peak, a);
    std::size_t rest = flat;
    bool boundary = false;
    for (int d = 0; d < u.grid.dim; ++d) {
      const int q = static_cast<int>(rest % m);
      rest /= m;
      boundary = boundary || q == 0 || q == m - 1;
    }
    if (boundary) edge = std::max(edge, a);
  }
  return peak == 0.0 ? 0.0 : edge / peak;
}

double cutoff_value(double r, double R) {
  const double t = r - R;
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  auto g = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
  const double a = g(1.0 - t);
  return a / (g(t) + a);
}

std::vector<double> build_cutoff(const BoxGrid& grid, double R) {
  grid.validate();
  if (!(R >= 0.0)) fail(ErrorCode::kInvalidArgument, "cutoff radius must be nonnegative");
  if (R + 1.0 >= grid.nyquist()) {
    fail(ErrorCode::kCutoffExceedsNyquist, "cutoff transition does not fit below the Nyquist frequency");
  }
  std::vector<double> chi(grid.size());
  for_each_frequency(grid, [&](std::size_t i, std::span<const double> lam) {
    double r2 = 0.0;
    for (double l : lam) r2 += l * l;
    chi[i] = cutoff_value(std::sqrt(r2), R);
  });
  return chi;
}

std::vector<double> Parametrix::omega_hat() const {
  std::vector<double> w(chi.size());
  std::transform(chi.begin(), chi.end(), w.begin(), [](double c) { return -c; });
  return w;
}

Parametrix build_parametrix(const FracSymbol& p, const BoxGrid& grid, std::optional<double> R_hint) {
  grid.validate();
  if (p.dim() != grid.dim) fail(ErrorCode::kDimensionMismatch, "operator and grid dimensions differ");
  const EllipticityReport ell = check_ellipticity(p);
  if (!ell.elliptic) fail(ErrorCode::kNotElliptic, "operator is not elliptic");
  double R;
  if (R_hint) {
    R = *R_hint;
  } else {
    const SymbolBounds b = estimate_bounds(p);
    R = std::min(b.found ? b.R : grid.nyquist() / 4.0, grid.nyquist() / 4.0);
  }
  Parametrix e{p, grid, R, {}, build_cutoff(grid, R)};
  e.e_hat.assign(grid.size(), 0.0);
  for_each_frequency(grid, [&](std::size_t i, std::span<const double> lam) {
    if (e.chi[i] == 1.0) return;
    const cplx pv = p.eval(lam);
    if (pv == 0.0 || !std::isfinite(std::abs(pv))) {
      fail(ErrorCode::kParametrixSingular, "symbol vanishes outside the cutoff plateau");
    }
    e.e_hat[i] = (1.0 - e.chi[i]) / pv;
  });
  return e;
}

EllipticSolution solve_elliptic(const Parametrix& e, const Field& f) {
  require_same_grid(e.grid, f.grid);
  const SpectralField fh = transform(f);
  SpectralField uh{f.grid, fh.coeffs};
  SpectralField rh{f.grid, fh.coeffs};
  for_each_frequency(f.grid, [&](std::size_t i, std::span<const double> lam) {
    uh.coeffs[i] *= e.e_hat[i];
    rh.coeffs[i] *= e.symbol.eval(lam) * e.e_hat[i] - 1.0;
  });
  return {inverse(uh), inverse(rh), e.R};
}

EllipticSolution solve_elliptic(const FracSymbol& p, const Field& f, std::optional<double> R_hint) {
  f.validate();
  return solve_elliptic(build_parametrix(p, f.grid, R_hint), f);
}

Field convolve(const Field& f, const Field& g) {
  require_same_grid(f.grid, g.grid);
  SpectralField fh = transform(f);
  const SpectralField gh = transform(g);
  for (std::size_t i = 0; i < fh.coeffs.size(); ++i) fh.coeffs[i] *= gh.coeffs[i];
  return inverse(fh);
}

Field sample_function(const BoxGrid& grid, const std::vector<FunctionSpec>& axes) {
  grid.validate();
  if (axes.size() != 1 && static_cast<int>(axes.size()) != grid.dim) {
    fail(ErrorCode::kDimensionMismatch, "need one function or one per axis");
  }
  std::vector<std::vector<double>> per_axis(grid.dim, std::vector<double>(grid.points));
  for (int d = 0; d < grid.dim; ++d) {
    const FunctionSpec& f = axes.size() == 1 ? axes[0] : axes[d];
    for (int i = 0; i < grid.points; ++i) per_axis[d][i] = f.value(grid.coordinate(i));
  }
  Field u = Field::zeros(grid);
  for (std::size_t flat = 0; flat < u.values.size(); ++flat) {
    std::size_t rest = flat;
    double v = 1.0;
    for (int d = grid.dim - 1; d >= 0; --d) {
      v *= per_axis[d][rest % grid.points];
      rest /= grid.points;
    }
    u.values[flat] = v;
  }
  return u;
}

Field field_from_spectrum(const BoxGrid& grid,
                          const std::function<cplx(std::span<const double>)>& spectrum) {
  grid.validate();
  SpectralField s{grid, std::vector<cplx>(grid.size())};
  for_each_frequency(grid, [&](std::size_t i, std::span<const double> lam) { s.coeffs[i] = spectrum(lam); });
  return inverse(s);
}

}  // namespace fracell
