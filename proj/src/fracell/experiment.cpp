#include "fracell/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <sstream>

namespace fracell {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

FracSymbol single_power(double a) { return FracSymbol(1, {{1.0, {{a}}}}); }

FracSymbol laplacian_like(double a) { return FracSymbol(2, {{1.0, {{a, 0.0}}}, {1.0, {{0.0, a}}}}); }

BoxGrid grid_for(const FracSymbol& op, const ExperimentConfig& cfg) {
  return BoxGrid{op.dim(), cfg.extent, op.dim() == 1 ? cfg.points_1d : cfg.points_2d};
}

double s_star_or_inf(const RegularityEstimate& e) {
  return e.capped ? std::numeric_limits<double>::infinity() : e.s_star;
}

}  // namespace

const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::kPass: return "pass";
    case RowStatus::kFail: return "fail";
    case RowStatus::kFlagged: return "flagged";
  }
  return "flagged";
}

std::vector<ExperimentCase> default_experiment_matrix(const ExperimentConfig& cfg) {
  const FunctionSpec step = FunctionSpec::step(-1.0, 1.0);
  const double t1 = cfg.tolerance_1d, t2 = cfg.tolerance_2d;
  std::vector<ExperimentCase> m;
  m.push_back({"D^0.4", single_power(0.4), {step}, t1});
  m.push_back({"D^0.7", single_power(0.7), {step}, t1});
  m.push_back({"D^1.3", single_power(1.3), {step}, t1});
  m.push_back({"D^2", single_power(2.0), {step}, t1});
  m.push_back({"D^0.7+D^0.3+1", FracSymbol(1, {{1.0, {{0.7}}}, {1.0, {{0.3}}}, {1.0, {{0.0}}}}), {step}, t1});
  m.push_back({"D1^0.5+D2^0.5", laplacian_like(0.5), {step}, t2});
  m.push_back({"D1^0.8+D2^0.8", laplacian_like(0.8), {step}, t2});
  m.push_back({"D^0.7/gaussian", single_power(0.7), {FunctionSpec::gaussian(0.0, 0.5)}, t1});
  return m;
}

std::vector<ExperimentCase> parse_experiment_matrix(const json& j, ExperimentConfig& cfg) {
  if (!j.is_object() || !j.contains("rows") || !j.at("rows").is_array()) {
    fail(ErrorCode::kParseError, "experiment matrix needs a 'rows' array");
  }
  try {
    cfg.extent = j.value("extent", cfg.extent);
    cfg.points_1d = j.value("points_1d", cfg.points_1d);
    cfg.points_2d = j.value("points_2d", cfg.points_2d);
    cfg.bands_per_octave = j.value("bands_per_octave", cfg.bands_per_octave);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, std::string("bad experiment settings: ") + e.what());
  }
  std::vector<ExperimentCase> cases;
  for (const auto& row : j.at("rows")) {
    if (!row.is_object() || !row.contains("op") || !row.contains("forcing")) {
      fail(ErrorCode::kParseError, "each row needs 'op' and 'forcing'");
    }
    FracSymbol op = FracSymbol::from_json(row.at("op"));
    std::vector<FunctionSpec> forcing;
    const json& fj = row.at("forcing");
    auto one = [](const json& s) {
      return s.is_string() ? catalog_lookup(s.get<std::string>()) : FunctionSpec::from_json(s);
    };
    if (fj.is_array()) {
      for (const auto& s : fj) forcing.push_back(one(s));
    } else {
      forcing.push_back(one(fj));
    }
    const double tol_default = op.dim() == 1 ? cfg.tolerance_1d : cfg.tolerance_2d;
    std::string id = row.value("id", "row" + std::to_string(cases.size()));
    const double tol = row.value("tolerance", tol_default);
    cases.push_back({std::move(id), std::move(op), std::move(forcing), tol});
  }
  return cases;
}

ExperimentRow run_experiment_case(const ExperimentCase& c, const ExperimentConfig& cfg) {
  const EllipticityReport ell = check_ellipticity(c.op);
  if (!ell.elliptic) {
    fail(ErrorCode::kNotElliptic, "operator '" + c.operator_id + "' is not elliptic: min |sigma| = " +
                                      fmt(ell.min_abs_sigma) + " at the sampled witness");
  }
  const BoxGrid grid = grid_for(c.op, cfg);
  const Field f = sample_function(grid, c.forcing);
  const EllipticSolution sol = solve_elliptic(c.op, f);

  ExperimentRow row;
  row.operator_id = c.operator_id;
  row.nu = order_and_gap(c.op).nu;
  row.expected_gain = row.nu;
  row.tolerance = c.tolerance;
  row.R = sol.R;

  const SpectralField fh = transform(f);
  const SpectralField rh = transform(sol.residual);
  double fmax = 0.0, rmax = 0.0;
  for_each_frequency(grid, [&](std::size_t i, std::span<const double> lam) {
    double r2 = 0.0;
    for (double l : lam) r2 += l * l;
    fmax = std::max(fmax, std::abs(fh.coeffs[i]));
    if (std::sqrt(r2) > sol.R + 1.0) rmax = std::max(rmax, std::abs(rh.coeffs[i]));
  });
  row.residual_ratio = fmax > 0.0 ? rmax / fmax : 0.0;

  // Bands start above the cutoff transition, where u and E * f coincide.
  RegularityOptions opt;
  opt.shells.bands_per_octave = cfg.bands_per_octave;
  opt.shells.min_radius = sol.R + 1.0;
  row.forcing_estimate = estimate_regularity(f, opt);
  row.solution_estimate = estimate_regularity(sol.u, opt);
  const RegularityEstimate& ef = row.forcing_estimate;
  const RegularityEstimate& eu = row.solution_estimate;
  row.s_f = s_star_or_inf(ef);
  row.s_u = s_star_or_inf(eu);

  if (ef.capped || eu.capped) {
    row.status = RowStatus::kFlagged;
    row.gain = std::numeric_limits<double>::quiet_NaN();
    row.note = ef.capped && eu.capped ? "smooth forcing, smooth solution"
               : ef.capped            ? "smooth forcing, rough solution"
                                      : "rough forcing, smooth solution";
    return row;
  }
  if (!ef.reliable || !eu.reliable) {
    row.status = RowStatus::kFlagged;
    row.gain = eu.s_star - ef.s_star;
    row.note = "unreliable fit";
    return row;
  }
  row.gain = eu.s_star - ef.s_star;
  row.within_tolerance = std::abs(row.gain - row.expected_gain) <= c.tolerance;
  row.status = row.within_tolerance ? RowStatus::kPass : RowStatus::kFail;
  return row;
}

std::vector<ExperimentRow> run_regularity_experiment(const std::vector<ExperimentCase>& cases,
                                                     const ExperimentConfig& cfg) {
  std::vector<std::future<ExperimentRow>> pending;
  for (const auto& c : cases) {
    pending.push_back(std::async(std::launch::async, [&c, &cfg] { return run_experiment_case(c, cfg); }));
  }
  std::vector<ExperimentRow> rows;
  rows.reserve(cases.size());
  for (auto& f : pending) rows.push_back(f.get());
  return rows;
}

std::vector<ExperimentRow> run_regularity_experiment(const std::vector<FracSymbol>& operators,
                                                     const std::vector<FunctionSpec>& forcings,
                                                     const ExperimentConfig& cfg) {
  std::vector<ExperimentCase> cases;
  for (std::size_t i = 0; i < operators.size(); ++i) {
    for (std::size_t j = 0; j < forcings.size(); ++j) {
      const double tol = operators[i].dim() == 1 ? cfg.tolerance_1d : cfg.tolerance_2d;
      cases.push_back({"op" + std::to_string(i) + "/f" + std::to_string(j), operators[i], {forcings[j]}, tol});
    }
  }
  return run_regularity_experiment(cases, cfg);
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << "operator_id,nu,s_f,s_u,gain,expected_gain,pass\n";
  for (const auto& r : rows) {
    out << r.operator_id << ',' << fmt(r.nu) << ',' << fmt(r.s_f) << ',' << fmt(r.s_u) << ',' << fmt(r.gain)
        << ',' << fmt(r.expected_gain) << ',' << to_string(r.status) << '\n';
  }
  return out.str();
}

std::string experiment_band_table(const ExperimentRow& row) {
  std::ostringstream out;
  out << "# " << row.operator_id << "\n# forcing\n" << shell_spectrum_table(row.forcing_estimate.spectrum);
  out << "\n\n# solution\n" << shell_spectrum_table(row.solution_estimate.spectrum);
  return out.str();
}

json to_json(const ExperimentRow& r) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"operator_id", r.operator_id},
          {"nu", r.nu},
          {"s_f", num(r.s_f)},
          {"s_u", num(r.s_u)},
          {"gain", num(r.gain)},
          {"expected_gain", r.expected_gain},
          {"tolerance", r.tolerance},
          {"status", to_string(r.status)},
          {"note", r.note},
          {"R", r.R},
          {"residual_ratio", r.residual_ratio},
          {"forcing_estimate", to_json(r.forcing_estimate)},
          {"solution_estimate", to_json(r.solution_estimate)}};
}

}  // namespace fracell
