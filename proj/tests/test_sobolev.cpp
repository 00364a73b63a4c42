#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "fracell/sobolev.hpp"
#include "fracell/special.hpp"
#include "support.hpp"

using fracell::BoxGrid;
using fracell::cplx;
using fracell::ErrorCode;
using fracell::Field;
using fracell::FunctionSpec;
using testing_support::Gen;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const fracell::Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

// |u_hat|^2 = (1 + |lambda|^2)^(-q), so u is in H^s exactly for s < q - n/2.
Field power_law(const BoxGrid& g, double q) {
  return fracell::field_from_spectrum(g, [q](std::span<const double> lam) {
    double r2 = 0.0;
    for (double l : lam) r2 += l * l;
    return cplx(std::pow(1.0 + r2, -0.5 * q));
  });
}

Field step_field(const BoxGrid& g, double shift = 0.0) {
  return fracell::sample_function(g, {FunctionSpec::step(-1.0 + shift, 1.0 + shift)});
}

}  // namespace

TEST_CASE("the H^0 norm is the L2 norm times sqrt(2 pi)") {
  // With u_hat = int u e^{i l x} dx, int |u_hat|^2 dl = 2 pi int |u|^2 dx.
  const BoxGrid g{1, 40.0, 1024};
  const Field u = fracell::sample_function(g, {FunctionSpec::gaussian(0.0, 1.0)});
  const double l2_sq = std::sqrt(fracell::kPi);  // int e^{-x^2} dx
  CHECK(fracell::sobolev_norm(u, 0.0) == doctest::Approx(std::sqrt(2 * fracell::kPi * l2_sq)).epsilon(1e-12));
  // H^1 adds int |l|^2 |u_hat|^2 = 2 pi int |u'|^2 = 2 pi sqrt(pi) / 2.
  CHECK(fracell::sobolev_norm(u, 1.0) ==
        doctest::Approx(std::sqrt(2 * fracell::kPi * 1.5 * std::sqrt(fracell::kPi))).epsilon(1e-12));
}

TEST_CASE("property: Sobolev norms are monotone in the exponent") {
  Gen g(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = g.integer(1, 2);
    const BoxGrid grid{dim, g.uniform(4.0, 12.0), dim == 1 ? 512 : 64};
    Field u = Field::zeros(grid);
    for (auto& v : u.values) v = {g.uniform(-1, 1), g.uniform(-1, 1)};
    double s1 = g.uniform(-2.0, 2.0), s2 = g.uniform(-2.0, 2.0);
    if (s1 > s2) std::swap(s1, s2);
    CHECK(fracell::sobolev_norm(u, s1) <= fracell::sobolev_norm(u, s2));
  }
}

TEST_CASE("step forcing has regularity one half") {
  const fracell::RegularityEstimate e = fracell::estimate_regularity(step_field(BoxGrid{1, 8.0, 4096}));
  CHECK_FALSE(e.capped);
  CHECK(e.reliable);
  CHECK(std::abs(e.s_star - 0.5) <= 0.1);
}

TEST_CASE("synthetic power-law spectra recover q - n/2") {
  const BoxGrid g{1, 8.0, 4096};
  for (double q : {1.0, 1.5, 2.0, 3.0}) {
    const fracell::RegularityEstimate e = fracell::estimate_regularity(power_law(g, q));
    CAPTURE(q);
    CHECK(std::abs(e.s_star - (q - 0.5)) <= 0.05);
    CHECK(e.reliable);
  }
}

TEST_CASE("two-dimensional power law") {
  const BoxGrid g{2, 8.0, 512};
  const fracell::RegularityEstimate e = fracell::estimate_regularity(power_law(g, 2.0));
  CHECK(std::abs(e.s_star - (2.0 - 1.0)) <= 0.1);
}

TEST_CASE("smooth data caps the estimate") {
  const fracell::RegularityEstimate e =
      fracell::estimate_regularity(fracell::sample_function(BoxGrid{1, 8.0, 4096}, {FunctionSpec::gaussian(0, 0.5)}));
  CHECK(e.capped);
  CHECK(std::isinf(e.s_star));
  CHECK(e.reliable);
  CHECK(fracell::to_json(e).at("s_star").is_null());
}

TEST_CASE("property: translation leaves the estimate unchanged") {
  Gen g(23);
  const BoxGrid grid{1, 8.0, 4096};
  // Whole-sample shifts only change the phase of u_hat.
  const double base = fracell::estimate_regularity(step_field(grid)).s_star;
  for (int trial = 0; trial < 8; ++trial) {
    const double a = g.integer(-200, 200) * grid.spacing();
    CHECK(std::abs(fracell::estimate_regularity(step_field(grid, a)).s_star - base) <= 0.02);
  }
  // Sub-sample shifts are compared among jumps that fall between nodes; a
  // jump sitting exactly on a node is sampled with its edge value 1/2, which
  // damps the top bands and reads about 0.05 smoother.
  const double off = fracell::estimate_regularity(step_field(grid, 0.123 * grid.spacing())).s_star;
  for (int trial = 0; trial < 8; ++trial) {
    const double a = g.uniform(-0.8, 0.8);
    CHECK(std::abs(fracell::estimate_regularity(step_field(grid, a)).s_star - off) <= 0.02);
  }
  CHECK(std::abs(base - 0.5) <= 0.1);
  CHECK(std::abs(off - 0.5) <= 0.1);
}

TEST_CASE("embedding: norms below the estimate converge under refinement, above it they grow") {
  // The norm over |l| <= K grows like K^(s - sigma) above the critical
  // exponent, so one doubling multiplies it by 2^(s - sigma); 1.3 needs
  // s - sigma >= 0.38, hence the 0.4 margin on the upper side.
  for (double q : {1.0, 1.5, 2.0}) {
    const double sigma = q - 0.5;
    std::vector<double> below, above;
    for (int m : {1024, 2048, 4096, 8192}) {
      const Field u = power_law(BoxGrid{1, 8.0, m}, q);
      below.push_back(fracell::sobolev_norm(u, sigma - 0.2));
      above.push_back(fracell::sobolev_norm(u, sigma + 0.4));
    }
    const double est = fracell::estimate_regularity(power_law(BoxGrid{1, 8.0, 4096}, q)).s_star;
    CHECK(std::abs(est - sigma) <= 0.05);
    for (std::size_t k = 1; k < below.size(); ++k) {
      CAPTURE(q);
      CHECK(below[k] / below[k - 1] <= 1.1);
      CHECK(above[k] / above[k - 1] >= 1.3);
    }
  }
}

TEST_CASE("shell spectrum layout") {
  const BoxGrid g{1, 8.0, 1024};
  const fracell::ShellSpectrum s = fracell::shell_spectrum(step_field(g), 2);
  REQUIRE(s.bands() >= 4);
  CHECK(s.lower.front() >= 3.0 * g.frequency_step() - 1e-12);
  CHECK(s.upper.back() <= 0.75 * g.nyquist() * (1.0 + 1e-12));
  for (std::size_t j = 0; j < s.bands(); ++j) {
    CHECK(s.upper[j] / s.lower[j] == doctest::Approx(std::sqrt(2.0)));
    CHECK(s.count[j] > 0);
    CHECK(s.energy[j] <= s.peak);
  }
  const std::string csv = fracell::shell_spectrum_csv(s);
  CHECK(csv.rfind("band_edge,band_energy,count\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(s.bands() + 1));
  const std::string table = fracell::shell_spectrum_table(s);
  CHECK(table.rfind("# ", 0) == 0);
}

TEST_CASE("shell spectrum errors") {
  const BoxGrid g{1, 8.0, 64};
  fracell::ShellOptions opt;
  opt.min_radius = 20.0;
  CHECK(code_of([&] { fracell::shell_spectrum(step_field(g), opt); }) == ErrorCode::kTooFewBands);
  CHECK(code_of([&] { fracell::shell_spectrum(step_field(g), 0); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { fracell::apply_window(step_field(g), 0.7); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("window keeps the centre and kills the edges") {
  const BoxGrid g{2, 8.0, 32};
  Field one = Field::zeros(g);
  for (auto& v : one.values) v = 1.0;
  const Field w = fracell::apply_window(one, 0.45);
  CHECK(w.values[16 * 32 + 16].real() == doctest::Approx(1.0));
  CHECK(w.values[0] == cplx(0.0, 0.0));
  CHECK(w.values[31 * 32 + 5] == cplx(0.0, 0.0));
}

TEST_CASE("regularity estimate JSON fields") {
  const auto j = fracell::to_json(fracell::estimate_regularity(step_field(BoxGrid{1, 8.0, 2048})));
  for (const char* key : {"p", "s_star", "r_squared", "capped", "reliable", "bands_used", "bands"}) {
    CHECK(j.contains(key));
  }
  CHECK(j.at("s_star").is_number());
}
