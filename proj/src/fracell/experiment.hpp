#pragma once

#include <string>
#include <vector>

#include "fracell/function_spec.hpp"
#include "fracell/sobolev.hpp"
#include "fracell/spectral.hpp"
#include "fracell/symbols.hpp"
#include "json.hpp"

namespace fracell {

struct ExperimentConfig {
  double extent = 8.0;
  int points_1d = 4096;
  int points_2d = 512;
  int bands_per_octave = 2;
  double tolerance_1d = 0.15;
  double tolerance_2d = 0.2;
};

struct ExperimentCase {
  std::string operator_id;
  FracSymbol op;
  // One spec per axis, or a single spec reused on every axis.
  std::vector<FunctionSpec> forcing;
  double tolerance = 0.15;
};

enum class RowStatus { kPass, kFail, kFlagged };

struct ExperimentRow {
  std::string operator_id;
  double nu = 0.0;
  double s_f = 0.0;
  double s_u = 0.0;
  double gain = 0.0;
  double expected_gain = 0.0;
  double tolerance = 0.0;
  bool within_tolerance = false;
  RowStatus status = RowStatus::kFlagged;
  std::string note;
  double R = 0.0;
  // max |residual_hat| over |lambda| > R + 1, relative to max |f_hat|.
  double residual_ratio = 0.0;
  RegularityEstimate forcing_estimate;
  RegularityEstimate solution_estimate;
};

std::vector<ExperimentCase> default_experiment_matrix(const ExperimentConfig& config = {});

// {"extent": L, "points_1d": m, "points_2d": m, "rows": [{"id": ..., "op": {...},
//  "forcing": spec | [spec, ...], "tolerance": t}]}; missing grid keys keep `config`.
std::vector<ExperimentCase> parse_experiment_matrix(const nlohmann::json& j, ExperimentConfig& config);

ExperimentRow run_experiment_case(const ExperimentCase& c, const ExperimentConfig& config);
std::vector<ExperimentRow> run_regularity_experiment(const std::vector<ExperimentCase>& cases,
                                                     const ExperimentConfig& config = {});
// Every dimension-compatible (operator, forcing) pair.
std::vector<ExperimentRow> run_regularity_experiment(const std::vector<FracSymbol>& operators,
                                                     const std::vector<FunctionSpec>& forcings,
                                                     const ExperimentConfig& config = {});

const char* to_string(RowStatus s);

// Columns: operator_id,nu,s_f,s_u,gain,expected_gain,pass
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

// Whitespace-separated band spectra of forcing and solution for plotting.
std::string experiment_band_table(const ExperimentRow& row);

nlohmann::json to_json(const ExperimentRow& row);

}  // namespace fracell
