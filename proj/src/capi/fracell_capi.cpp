#include "fracell/fracell.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "fracell/experiment.hpp"
#include "fracell/field_io.hpp"
#include "fracell/fracops.hpp"
#include "fracell/sobolev.hpp"
#include "fracell/spectral.hpp"
#include "fracell/symbols.hpp"
#include "fracell/verify.hpp"

struct fracell_function {
  fracell::FunctionSpec spec;
};

struct fracell_symbol {
  fracell::FracSymbol symbol;
};

struct fracell_field {
  fracell::Field field;
};

namespace {

using fracell::cplx;
using nlohmann::json;

thread_local std::string g_last_error;

fracell_status set_error(fracell_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class Fn>
fracell_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return FRACELL_OK;
  } catch (const fracell::Error& e) {
    return set_error(static_cast<fracell_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(FRACELL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(FRACELL_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) fracell::fail(fracell::ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fracell::QuadratureConfig to_config(const fracell_quadrature& q) {
  fracell::QuadratureConfig c;
  c.subintervals = q.subintervals;
  c.grading = q.grading;
  if (q.truncation_length > 0.0) c.truncation_length = q.truncation_length;
  switch (q.outer) {
    case FRACELL_OUTER_ANALYTIC: c.outer = fracell::OuterDerivative::kAnalytic; break;
    case FRACELL_OUTER_FINITE_DIFFERENCE: c.outer = fracell::OuterDerivative::kFiniteDifference; break;
    default: c.outer = fracell::OuterDerivative::kAuto; break;
  }
  return c;
}

fracell::DifferintOrder to_order(const fracell_order& o) {
  return {cplx(o.nu_re, o.nu_im), o.base_is_finite ? std::optional<double>(o.base) : std::nullopt};
}

fracell::SampledCurve sample_curve(const fracell::FunctionSpec& f, double x0, double dx, std::size_t count) {
  fracell::SampledCurve u;
  u.x0 = x0;
  u.dx = dx;
  u.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) u.values[i] = f.value(u.x(i));
  u.validate();
  return u;
}

cplx pointwise(const fracell::FunctionSpec& f, const fracell::DifferintOrder& ord, fracell_method method,
               const fracell_quadrature& q, double x) {
  const fracell::QuadratureConfig cfg = to_config(q);
  switch (method) {
    case FRACELL_METHOD_QUADRATURE:
      return ord.nu.real() < 0.0 ? fracell::rl_integral(f, ord, x, cfg) : fracell::rl_derivative(f, ord, x, cfg);
    case FRACELL_METHOD_CAPUTO: return fracell::caputo_derivative(f, ord, x, cfg);
    case FRACELL_METHOD_HANKEL: {
      fracell::HankelContour h;
      h.nodes = q.hankel_nodes;
      if (q.hankel_radius > 0.0) h.loop_radius = q.hankel_radius;
      return fracell::hankel_differintegral(f, ord, x, h);
    }
    default: break;
  }
  fracell::fail(fracell::ErrorCode::kInvalidArgument, "unknown method");
}

void check_fourier_order(const fracell::DifferintOrder& ord) {
  if (ord.base_is_finite()) {
    fracell::fail(fracell::ErrorCode::kInvalidArgument, "the Fourier method works from c = -inf only");
  }
}

json bounds_json(const fracell::SymbolBounds& b) {
  return {{"found", b.found}, {"R", b.R}, {"C", b.C}, {"scan_max", b.scan_max}, {"samples", b.samples}};
}

}  // namespace

extern "C" {

const char* fracell_version(void) { return "0.1.0"; }

const char* fracell_last_error(void) { return g_last_error.c_str(); }

const char* fracell_status_name(fracell_status status) {
  if (status == FRACELL_OK) return "Ok";
  if (status == FRACELL_ERR_INTERNAL) return "Internal";
  return fracell::error_name(static_cast<fracell::ErrorCode>(static_cast<int>(status)));
}

void fracell_string_free(char* s) { std::free(s); }

fracell_status fracell_function_parse(const char* text, fracell_function** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new fracell_function{fracell::parse_function(text)};
  });
}

void fracell_function_free(fracell_function* f) { delete f; }

fracell_status fracell_function_to_json(const fracell_function* f, char** out_json) {
  return guarded([&] {
    require(f != nullptr && out_json != nullptr, "null argument");
    *out_json = dup_string(f->spec.to_json().dump());
  });
}

fracell_status fracell_function_eval(const fracell_function* f, const double* x, size_t count, double* out) {
  return guarded([&] {
    require(f != nullptr && (count == 0 || (x != nullptr && out != nullptr)), "null argument");
    for (size_t i = 0; i < count; ++i) out[i] = f->spec.value(x[i]);
  });
}

fracell_status fracell_catalog_names(char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null argument");
    *out_json = dup_string(json(fracell::catalog_names()).dump());
  });
}

void fracell_quadrature_defaults(fracell_quadrature* q) {
  if (q == nullptr) return;
  const fracell::QuadratureConfig c;
  q->subintervals = c.subintervals;
  q->grading = c.grading;
  q->truncation_length = 0.0;
  q->outer = FRACELL_OUTER_AUTO;
  q->hankel_nodes = fracell::HankelContour{}.nodes;
  q->hankel_radius = 0.0;
  q->fourier_extent = 40.0;
  q->fourier_points = 4096;
}

fracell_status fracell_differint(const fracell_function* f, const fracell_order* ord, fracell_method method,
                                 const fracell_quadrature* q, const double* x, size_t count, double* out_re,
                                 double* out_im) {
  return guarded([&] {
    require(f != nullptr && ord != nullptr, "null argument");
    require(count == 0 || (x != nullptr && out_re != nullptr && out_im != nullptr), "null argument");
    fracell_quadrature qq;
    fracell_quadrature_defaults(&qq);
    if (q != nullptr) qq = *q;
    const fracell::DifferintOrder o = to_order(*ord);
    if (method == FRACELL_METHOD_FOURIER) {
      check_fourier_order(o);
      require(qq.fourier_points >= 16 && qq.fourier_extent > 0.0, "bad Fourier box");
      const double dx = qq.fourier_extent / qq.fourier_points;
      const fracell::SampledCurve u = sample_curve(f->spec, -0.5 * qq.fourier_extent, dx,
                                                   static_cast<std::size_t>(qq.fourier_points));
      const fracell::SampledCurve d = fracell::fourier_differint(u, o.nu);
      for (size_t i = 0; i < count; ++i) {
        if (!(std::abs(x[i]) < 0.5 * qq.fourier_extent)) {
          fracell::fail(fracell::ErrorCode::kInvalidArgument, "evaluation point outside the Fourier box");
        }
        const cplx v = d.interpolate(x[i]);
        out_re[i] = v.real();
        out_im[i] = v.imag();
      }
      return;
    }
    for (size_t i = 0; i < count; ++i) {
      const cplx v = pointwise(f->spec, o, method, qq, x[i]);
      out_re[i] = v.real();
      out_im[i] = v.imag();
    }
  });
}

fracell_status fracell_differint_grid(const fracell_function* f, const fracell_order* ord, fracell_method method,
                                      const fracell_quadrature* q, double x0, double dx, size_t count,
                                      double* out_re, double* out_im) {
  return guarded([&] {
    require(f != nullptr && ord != nullptr && out_re != nullptr && out_im != nullptr, "null argument");
    fracell_quadrature qq;
    fracell_quadrature_defaults(&qq);
    if (q != nullptr) qq = *q;
    const fracell::DifferintOrder o = to_order(*ord);
    if (method == FRACELL_METHOD_FOURIER) {
      check_fourier_order(o);
      const fracell::SampledCurve d = fracell::fourier_differint(sample_curve(f->spec, x0, dx, count), o.nu);
      for (size_t i = 0; i < count; ++i) {
        out_re[i] = d.values[i].real();
        out_im[i] = d.values[i].imag();
      }
      return;
    }
    require(count >= 1 && dx > 0.0, "grid needs at least one point and positive spacing");
    for (size_t i = 0; i < count; ++i) {
      const cplx v = pointwise(f->spec, o, method, qq, x0 + static_cast<double>(i) * dx);
      out_re[i] = v.real();
      out_im[i] = v.imag();
    }
  });
}

fracell_status fracell_closed_form(const fracell_function* f, double nu_re, double nu_im, double x,
                                   double* out_re, double* out_im, int* pole) {
  return guarded([&] {
    require(f != nullptr && out_re != nullptr && out_im != nullptr, "null argument");
    const fracell::OracleValue v = fracell::closed_form_oracle(f->spec, cplx(nu_re, nu_im), x);
    *out_re = v.value.real();
    *out_im = v.value.imag();
    if (pole != nullptr) *pole = v.pole ? 1 : 0;
  });
}

fracell_status fracell_symbol_parse(const char* text, fracell_symbol** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new fracell_symbol{fracell::FracSymbol::parse(text)};
  });
}

void fracell_symbol_free(fracell_symbol* p) { delete p; }

int fracell_symbol_dim(const fracell_symbol* p) { return p == nullptr ? 0 : p->symbol.dim(); }

fracell_status fracell_symbol_eval(const fracell_symbol* p, const double* lambda, size_t dim, double* out_re,
                                   double* out_im) {
  return guarded([&] {
    require(p != nullptr && lambda != nullptr && out_re != nullptr && out_im != nullptr, "null argument");
    const cplx v = p->symbol.eval(std::span<const double>(lambda, dim));
    *out_re = v.real();
    *out_im = v.imag();
  });
}

fracell_status fracell_symbol_report(const fracell_symbol* p, double scan_max, unsigned long long seed,
                                     char** out_json) {
  return guarded([&] {
    require(p != nullptr && out_json != nullptr, "null argument");
    const fracell::FracSymbol& s = p->symbol;
    const fracell::OrderGap og = fracell::order_and_gap(s);
    fracell::EllipticityOptions eo;
    eo.seed = seed;
    const fracell::EllipticityReport ell = fracell::check_ellipticity(s, eo);
    json j;
    j["dim"] = s.dim();
    j["nu"] = og.nu;
    j["epsilon"] = og.epsilon;
    j["homogeneous"] = og.homogeneous;
    j["principal_symbol"] = fracell::principal_symbol(s).to_json();
    j["elliptic"] = ell.elliptic;
    j["ellipticity"] = {{"elliptic", ell.elliptic},
                        {"min_abs_sigma", ell.min_abs_sigma},
                        {"witness", ell.witness},
                        {"samples", ell.samples},
                        {"threshold", ell.threshold}};
    if (ell.elliptic) {
      j["bounds"] = bounds_json(fracell::estimate_bounds(s, scan_max > 1.0 ? scan_max : 1e4));
    } else {
      j["bounds"] = nullptr;
    }
    *out_json = dup_string(j.dump(2));
  });
}

fracell_status fracell_field_sample(const fracell_grid* grid, const fracell_function* const* axes, size_t n_axes,
                                    fracell_field** out) {
  return guarded([&] {
    require(grid != nullptr && axes != nullptr && out != nullptr && n_axes > 0, "null argument");
    std::vector<fracell::FunctionSpec> specs;
    for (size_t i = 0; i < n_axes; ++i) {
      require(axes[i] != nullptr, "null function handle");
      specs.push_back(axes[i]->spec);
    }
    const fracell::BoxGrid g{grid->dim, grid->extent, grid->points};
    *out = new fracell_field{fracell::sample_function(g, specs)};
  });
}

fracell_status fracell_field_load(const char* path, fracell_field** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new fracell_field{fracell::load_field(path)};
  });
}

fracell_status fracell_field_save(const fracell_field* u, const char* path) {
  return guarded([&] {
    require(u != nullptr && path != nullptr, "null argument");
    fracell::save_field(path, u->field);
  });
}

fracell_status fracell_field_write_csv(const fracell_field* u, const char* path) {
  return guarded([&] {
    require(u != nullptr && path != nullptr, "null argument");
    fracell::write_field_csv(path, u->field);
  });
}

fracell_status fracell_field_grid(const fracell_field* u, fracell_grid* out) {
  return guarded([&] {
    require(u != nullptr && out != nullptr, "null argument");
    *out = {u->field.grid.dim, u->field.grid.extent, u->field.grid.points};
  });
}

fracell_status fracell_field_values(const fracell_field* u, double* out_re, double* out_im, size_t count) {
  return guarded([&] {
    require(u != nullptr && out_re != nullptr && out_im != nullptr, "null argument");
    if (count != u->field.values.size()) {
      fracell::fail(fracell::ErrorCode::kDimensionMismatch, "output length differs from field size");
    }
    for (size_t i = 0; i < count; ++i) {
      out_re[i] = u->field.values[i].real();
      out_im[i] = u->field.values[i].imag();
    }
  });
}

void fracell_field_free(fracell_field* u) { delete u; }

fracell_status fracell_solve(const fracell_symbol* p, const fracell_field* f, double R_hint, fracell_field** u,
                             fracell_field** residual, char** report_json) {
  return guarded([&] {
    require(p != nullptr && f != nullptr, "null argument");
    const fracell::Field& ff = f->field;
    const fracell::EllipticSolution sol =
        fracell::solve_elliptic(p->symbol, ff, R_hint > 0.0 ? std::optional<double>(R_hint) : std::nullopt);
    if (report_json != nullptr) {
      const fracell::SpectralField fh = fracell::transform(ff);
      const fracell::SpectralField rh = fracell::transform(sol.residual);
      double fmax = 0.0, rmax = 0.0;
      fracell::for_each_frequency(ff.grid, [&](std::size_t i, std::span<const double> lam) {
        double r2 = 0.0;
        for (double l : lam) r2 += l * l;
        fmax = std::max(fmax, std::abs(fh.coeffs[i]));
        if (std::sqrt(r2) > sol.R + 1.0) rmax = std::max(rmax, std::abs(rh.coeffs[i]));
      });
      json j;
      j["R"] = sol.R;
      j["nu"] = fracell::order_and_gap(p->symbol).nu;
      j["f_hat_max"] = fmax;
      j["residual_hat_max_above_cutoff"] = rmax;
      j["residual_ratio"] = fmax > 0.0 ? rmax / fmax : 0.0;
      j["forcing_edge_ratio"] = fracell::edge_ratio(ff);
      try {
        j["u_estimate"] = fracell::to_json(fracell::estimate_regularity(sol.u));
      } catch (const fracell::Error& e) {
        j["u_estimate"] = {{"error", e.name()}};
      }
      *report_json = dup_string(j.dump(2));
    }
    if (u != nullptr) *u = new fracell_field{sol.u};
    if (residual != nullptr) *residual = new fracell_field{sol.residual};
  });
}

fracell_status fracell_sobolev_norm(const fracell_field* u, double s, double* out) {
  return guarded([&] {
    require(u != nullptr && out != nullptr, "null argument");
    *out = fracell::sobolev_norm(u->field, s);
  });
}

fracell_status fracell_estimate_regularity(const fracell_field* u, int bands_per_octave, double min_radius,
                                           char** out_json) {
  return guarded([&] {
    require(u != nullptr && out_json != nullptr, "null argument");
    fracell::RegularityOptions opt;
    if (bands_per_octave > 0) opt.shells.bands_per_octave = bands_per_octave;
    if (min_radius > 0.0) opt.shells.min_radius = min_radius;
    *out_json = dup_string(fracell::to_json(fracell::estimate_regularity(u->field, opt)).dump(2));
  });
}

fracell_status fracell_shell_spectrum_csv(const fracell_field* u, int bands_per_octave, char** out_csv) {
  return guarded([&] {
    require(u != nullptr && out_csv != nullptr, "null argument");
    const int b = bands_per_octave > 0 ? bands_per_octave : fracell::ShellOptions{}.bands_per_octave;
    *out_csv = dup_string(fracell::shell_spectrum_csv(fracell::shell_spectrum(u->field, b)));
  });
}

fracell_status fracell_verify(const char* const* ids, size_t n_ids, char** out_json, int* all_pass) {
  return guarded([&] {
    require(out_json != nullptr && (n_ids == 0 || ids != nullptr), "null argument");
    std::vector<std::string> selector;
    for (size_t i = 0; i < n_ids; ++i) {
      require(ids[i] != nullptr, "null check id");
      selector.emplace_back(ids[i]);
    }
    const auto results = fracell::run_identity_suite(selector);
    json arr = json::array();
    bool ok = true;
    for (const auto& r : results) {
      arr.push_back(fracell::to_json(r));
      ok = ok && r.pass;
    }
    *out_json = dup_string(arr.dump(2));
    if (all_pass != nullptr) *all_pass = ok ? 1 : 0;
  });
}

fracell_status fracell_commutator_check(double alpha, const fracell_function* u, const fracell_function* phi,
                                        char** out_json, int* pass) {
  return guarded([&] {
    require(u != nullptr && phi != nullptr && out_json != nullptr, "null argument");
    const fracell::CheckResult r = fracell::run_commutator_check(alpha, u->spec, phi->spec);
    *out_json = dup_string(fracell::to_json(r).dump(2));
    if (pass != nullptr) *pass = r.pass ? 1 : 0;
  });
}

fracell_status fracell_experiment_regularity(const char* matrix_json, char** out_csv, char** out_json) {
  return guarded([&] {
    fracell::ExperimentConfig cfg;
    std::vector<fracell::ExperimentCase> cases;
    if (matrix_json == nullptr) {
      cases = fracell::default_experiment_matrix(cfg);
    } else {
      json j;
      try {
        j = json::parse(matrix_json);
      } catch (const json::exception& e) {
        fracell::fail(fracell::ErrorCode::kParseError, std::string("invalid matrix JSON: ") + e.what());
      }
      cases = fracell::parse_experiment_matrix(j, cfg);
    }
    const auto rows = fracell::run_regularity_experiment(cases, cfg);
    if (out_csv != nullptr) *out_csv = dup_string(fracell::experiment_csv(rows));
    if (out_json != nullptr) {
      json arr = json::array();
      for (const auto& r : rows) {
        json jr = fracell::to_json(r);
        jr["bands"] = fracell::experiment_band_table(r);
        arr.push_back(std::move(jr));
      }
      *out_json = dup_string(arr.dump(2));
    }
  });
}

}  // extern "C"
