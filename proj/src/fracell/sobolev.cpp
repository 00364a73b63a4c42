#include "fracell/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fracell/special.hpp"

namespace fracell {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

double sobolev_norm(const Field& u, double s) {
  const SpectralField h = transform(u);
  const double cell = std::pow(u.grid.frequency_step(), u.grid.dim);
  double acc = 0.0;
  for_each_frequency(u.grid, [&](std::size_t i, std::span<const double> lam) {
    double r2 = 0.0;
    for (double l : lam) r2 += l * l;
    acc += std::norm(h.coeffs[i]) * std::pow(1.0 + r2, s);
  });
  return std::sqrt(acc * cell);
}

ShellSpectrum shell_spectrum(const Field& u, const ShellOptions& opt) {
  if (opt.bands_per_octave < 1) fail(ErrorCode::kInvalidArgument, "bands per octave must be positive");
  const SpectralField h = transform(u);
  const double r_start = std::max(3.0 * u.grid.frequency_step(), opt.min_radius);
  const double r_end = opt.max_fraction * u.grid.nyquist();
  const double ratio = std::pow(2.0, 1.0 / opt.bands_per_octave);

  std::vector<double> edges{r_start};
  while (edges.back() * ratio <= r_end * (1.0 + 1e-12)) edges.push_back(edges.back() * ratio);
  const std::size_t nb = edges.size() > 1 ? edges.size() - 1 : 0;
  std::vector<double> sum(nb, 0.0);
  std::vector<std::size_t> cnt(nb, 0);
  const double log_ratio = std::log(ratio);

  ShellSpectrum out;
  for_each_frequency(u.grid, [&](std::size_t i, std::span<const double> lam) {
    double r2 = 0.0;
    for (double l : lam) r2 += l * l;
    const double e = std::norm(h.coeffs[i]);
    out.peak = std::max(out.peak, e);
    const double r = std::sqrt(r2);
    if (nb == 0 || r < r_start || r >= edges.back()) return;
    auto j = static_cast<std::size_t>(std::log(r / r_start) / log_ratio);
    j = std::min(j, nb - 1);
    // Guard the floor against rounding at band edges.
    while (j > 0 && r < edges[j]) --j;
    while (j + 1 < nb && r >= edges[j + 1]) ++j;
    sum[j] += e;
    ++cnt[j];
  });
  for (std::size_t j = 0; j < nb; ++j) {
    if (cnt[j] == 0) continue;
    out.lower.push_back(edges[j]);
    out.upper.push_back(edges[j + 1]);
    out.energy.push_back(sum[j] / static_cast<double>(cnt[j]));
    out.count.push_back(cnt[j]);
  }
  if (out.bands() < 4) fail(ErrorCode::kTooFewBands, "fewer than 4 usable frequency bands");
  return out;
}

ShellSpectrum shell_spectrum(const Field& u, int bands_per_octave) {
  ShellOptions opt;
  opt.bands_per_octave = bands_per_octave;
  return shell_spectrum(u, opt);
}

std::string shell_spectrum_table(const ShellSpectrum& s) {
  std::ostringstream out;
  out << "# band_lower band_upper band_energy count\n";
  for (std::size_t j = 0; j < s.bands(); ++j) {
    out << fmt(s.lower[j]) << ' ' << fmt(s.upper[j]) << ' ' << fmt(s.energy[j]) << ' ' << s.count[j] << '\n';
  }
  return out.str();
}

std::string shell_spectrum_csv(const ShellSpectrum& s) {
  std::ostringstream out;
  out << "band_edge,band_energy,count\n";
  for (std::size_t j = 0; j < s.bands(); ++j) {
    out << fmt(s.lower[j]) << ',' << fmt(s.energy[j]) << ',' << s.count[j] << '\n';
  }
  return out.str();
}

Field apply_window(const Field& u, double fraction) {
  u.validate();
  if (!(fraction > 0.0 && fraction <= 0.5)) fail(ErrorCode::kInvalidArgument, "window fraction must lie in (0, 1/2]");
  const BoxGrid& g = u.grid;
  const double radius = fraction * g.extent;
  std::vector<double> w(g.points);
  for (int i = 0; i < g.points; ++i) {
    const double t = g.coordinate(i) / radius;
    w[i] = std::abs(t) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
  }
  Field out = u;
  for (std::size_t flat = 0; flat < out.values.size(); ++flat) {
    std::size_t rest = flat;
    double f = 1.0;
    for (int d = 0; d < g.dim; ++d) {
      f *= w[rest % g.points];
      rest /= g.points;
    }
    out.values[flat] *= f;
  }
  return out;
}

RegularityEstimate estimate_regularity(const Field& u, const RegularityOptions& opt) {
  const Field windowed = opt.window ? apply_window(u, opt.window_fraction) : u;
  RegularityEstimate est;
  est.spectrum = shell_spectrum(windowed, opt.shells);
  const ShellSpectrum& s = est.spectrum;
  const int nb = static_cast<int>(s.bands());

  // Bands at the numeric floor carry no slope information.
  int last = nb - 1;
  for (int j = 0; j < nb; ++j) {
    if (s.energy[j] <= opt.floor_ratio * s.peak) {
      if (j < nb - 1) est.capped = true;
      last = j - 1;
      break;
    }
  }
  est.first_band = 0;
  est.last_band = last;

  const int used = last + 1;
  if (used >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int j = 0; j <= last; ++j) {
      const double x = 0.5 * (std::log(s.lower[j]) + std::log(s.upper[j]));
      const double y = std::log(s.energy[j]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      syy += y * y;
    }
    const double n = used;
    const double cxx = sxx - sx * sx / n;
    const double cxy = sxy - sx * sy / n;
    const double cyy = syy - sy * sy / n;
    const double slope = cxy / cxx;
    est.p = -slope;
    est.r_squared = cyy > 0.0 ? std::clamp(cxy * cxy / (cxx * cyy), 0.0, 1.0) : 1.0;
  }
  const int n = u.grid.dim;
  if (est.capped) {
    est.s_star = std::numeric_limits<double>::infinity();
    est.reliable = true;
  } else {
    est.s_star = 0.5 * (est.p - n);
    est.reliable = est.r_squared >= opt.min_r_squared && used >= 4;
  }
  return est;
}

nlohmann::json to_json(const RegularityEstimate& e) {
  nlohmann::json j;
  j["p"] = e.p;
  j["s_star"] = e.capped ? nlohmann::json(nullptr) : nlohmann::json(e.s_star);
  j["r_squared"] = e.r_squared;
  j["capped"] = e.capped;
  j["reliable"] = e.reliable;
  j["bands_used"] = {e.first_band, e.last_band};
  j["bands"] = e.spectrum.bands();
  return j;
}

}  // namespace fracell
