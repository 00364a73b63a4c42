#pragma once

#include <string>
#include <vector>

#include "fracell/spectral.hpp"
#include "json.hpp"

namespace fracell {

// (sum |u_hat|^2 (1 + |lambda|^2)^s (2 pi / L)^n)^{1/2}
double sobolev_norm(const Field& u, double s);

// Radial bands [edges[j], edges[j+1]) with the mean of |u_hat|^2 in each.
struct ShellSpectrum {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> energy;
  std::vector<std::size_t> count;
  double peak = 0.0;  // max |u_hat|^2 over the whole grid

  std::size_t bands() const { return energy.size(); }
};

struct ShellOptions {
  int bands_per_octave = 2;
  // Bands start at max(3 frequency steps, min_radius) and stop at
  // max_fraction of the Nyquist frequency.
  double min_radius = 0.0;
  double max_fraction = 0.75;
};

ShellSpectrum shell_spectrum(const Field& u, const ShellOptions& opt = {});
ShellSpectrum shell_spectrum(const Field& u, int bands_per_octave);

// Rows "band_lower band_upper band_energy count", whitespace separated.
std::string shell_spectrum_table(const ShellSpectrum& s);
std::string shell_spectrum_csv(const ShellSpectrum& s);

struct RegularityOptions {
  ShellOptions shells;
  bool window = true;
  double window_fraction = 0.45;
  double floor_ratio = 1e-28;
  double min_r_squared = 0.9;
};

struct RegularityEstimate {
  double p = 0.0;
  double s_star = 0.0;  // +inf when capped
  double r_squared = 0.0;
  bool capped = false;
  bool reliable = false;
  int first_band = 0;
  int last_band = 0;
  ShellSpectrum spectrum;
};

// Multiplies by a product of 1-D bumps of radius fraction * L centred in the box.
Field apply_window(const Field& u, double fraction);

RegularityEstimate estimate_regularity(const Field& u, const RegularityOptions& opt = {});

nlohmann::json to_json(const RegularityEstimate& e);

}  // namespace fracell
