// Command-line front end. Talks to the library through the C interface only.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracell/fracell.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Thrown when a library call fails; carries the status for the exit path.
struct CallFailed {
  fracell_status status;
  std::string message;
};

void check(fracell_status s) {
  if (s != FRACELL_OK) throw CallFailed{s, fracell_last_error()};
}

struct FunctionDeleter {
  void operator()(fracell_function* f) const { fracell_function_free(f); }
};
struct SymbolDeleter {
  void operator()(fracell_symbol* p) const { fracell_symbol_free(p); }
};
struct FieldDeleter {
  void operator()(fracell_field* u) const { fracell_field_free(u); }
};
using FunctionPtr = std::unique_ptr<fracell_function, FunctionDeleter>;
using SymbolPtr = std::unique_ptr<fracell_symbol, SymbolDeleter>;
using FieldPtr = std::unique_ptr<fracell_field, FieldDeleter>;

std::string take_string(char* s) {
  std::string out = s == nullptr ? std::string() : std::string(s);
  fracell_string_free(s);
  return out;
}

// "@path" reads the argument from a file.
std::string resolve_text(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw CallFailed{FRACELL_ERR_IO, "cannot read " + arg.substr(1)};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FunctionPtr parse_function(const std::string& text) {
  fracell_function* f = nullptr;
  check(fracell_function_parse(resolve_text(text).c_str(), &f));
  return FunctionPtr(f);
}

SymbolPtr parse_symbol(const std::string& text) {
  fracell_symbol* p = nullptr;
  check(fracell_symbol_parse(resolve_text(text).c_str(), &p));
  return SymbolPtr(p);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("FRACELL_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return fs::current_path();
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw CallFailed{FRACELL_ERR_IO, "cannot write " + tmp.string()};
  }
  fs::rename(tmp, path);
}

std::string safe_name(const std::string& id) {
  std::string out;
  for (char ch : id) out += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
  return out;
}

// ---- differint ----

struct DifferintArgs {
  std::string func;
  double nu = 0.5;
  double nu_im = 0.0;
  std::string base = "0";
  std::string method = "quadrature";
  std::vector<double> at;
  std::string grid;
  int subintervals = 0;
  double grading = 0.0;
  double truncation = 0.0;
  std::string outer = "auto";
  int hankel_nodes = 0;
  double fourier_extent = 0.0;
  int fourier_points = 0;
};

int run_differint(const DifferintArgs& a) {
  const FunctionPtr f = parse_function(a.func);
  fracell_order ord{a.nu, a.nu_im, 1, 0.0};
  if (a.base == "-inf") {
    ord.base_is_finite = 0;
  } else {
    try {
      ord.base = std::stod(a.base);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--c", "expects a number or -inf");
    }
  }
  fracell_quadrature q;
  fracell_quadrature_defaults(&q);
  if (a.subintervals > 0) q.subintervals = a.subintervals;
  if (a.grading > 0.0) q.grading = a.grading;
  if (a.truncation > 0.0) q.truncation_length = a.truncation;
  if (a.hankel_nodes > 0) q.hankel_nodes = a.hankel_nodes;
  if (a.fourier_extent > 0.0) q.fourier_extent = a.fourier_extent;
  if (a.fourier_points > 0) q.fourier_points = a.fourier_points;
  q.outer = a.outer == "analytic" ? FRACELL_OUTER_ANALYTIC
            : a.outer == "fd"     ? FRACELL_OUTER_FINITE_DIFFERENCE
                                  : FRACELL_OUTER_AUTO;
  const fracell_method method = a.method == "fourier" ? FRACELL_METHOD_FOURIER
                                : a.method == "hankel" ? FRACELL_METHOD_HANKEL
                                : a.method == "caputo" ? FRACELL_METHOD_CAPUTO
                                                       : FRACELL_METHOD_QUADRATURE;

  std::vector<double> xs = a.at;
  std::vector<double> re, im;
  if (!a.grid.empty()) {
    double x0 = 0.0, x1 = 0.0;
    long count = 0;
    if (std::sscanf(a.grid.c_str(), "%lf,%lf,%ld", &x0, &x1, &count) != 3 || count < 2 || !(x1 > x0)) {
      throw CLI::ValidationError("--grid", "expects x0,x1,count with x1 > x0 and count >= 2");
    }
    const double dx = (x1 - x0) / static_cast<double>(count - 1);
    re.resize(count);
    im.resize(count);
    check(fracell_differint_grid(f.get(), &ord, method, &q, x0, dx, static_cast<size_t>(count), re.data(),
                                 im.data()));
    xs.resize(count);
    for (long i = 0; i < count; ++i) xs[i] = x0 + static_cast<double>(i) * dx;
  } else {
    re.resize(xs.size());
    im.resize(xs.size());
    check(fracell_differint(f.get(), &ord, method, &q, xs.data(), xs.size(), re.data(), im.data()));
  }

  if (xs.size() == 1 && a.grid.empty()) {
    // A lone point prints the value; the imaginary part only when it carries information.
    if (a.nu_im != 0.0 || std::abs(im[0]) > 1e-12 * std::max(1.0, std::abs(re[0]))) {
      std::printf("%s %s\n", fmt(re[0]).c_str(), fmt(im[0]).c_str());
    } else {
      std::printf("%s\n", fmt(re[0]).c_str());
    }
    return kExitOk;
  }
  std::printf("x,re,im\n");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::printf("%s,%s,%s\n", fmt(xs[i]).c_str(), fmt(re[i]).c_str(), fmt(im[i]).c_str());
  }
  return kExitOk;
}

// ---- symbol ----

int run_symbol(const std::string& op, double scan_max, unsigned long long seed) {
  const SymbolPtr p = parse_symbol(op);
  char* out = nullptr;
  check(fracell_symbol_report(p.get(), scan_max, seed, &out));
  std::printf("%s\n", take_string(out).c_str());
  return kExitOk;
}

// ---- fields shared by solve and sobolev ----

FieldPtr sample_field(const std::vector<std::string>& funcs, int dim, double extent, int points) {
  std::vector<FunctionPtr> owned;
  std::vector<const fracell_function*> axes;
  for (const auto& s : funcs) {
    owned.push_back(parse_function(s));
    axes.push_back(owned.back().get());
  }
  const fracell_grid g{dim, extent, points};
  fracell_field* u = nullptr;
  check(fracell_field_sample(&g, axes.data(), axes.size(), &u));
  return FieldPtr(u);
}

int default_points(int dim) { return dim == 1 ? 4096 : dim == 2 ? 512 : 64; }

struct SolveArgs {
  std::string op;
  std::vector<std::string> forcing;
  double extent = 8.0;
  int points = 0;
  double R = 0.0;
  std::string out;
  std::string residual_out;
  std::string csv_out;
};

int run_solve(const SolveArgs& a) {
  const SymbolPtr p = parse_symbol(a.op);
  const int dim = fracell_symbol_dim(p.get());
  const FieldPtr f = sample_field(a.forcing, dim, a.extent, a.points > 0 ? a.points : default_points(dim));
  fracell_field* u_raw = nullptr;
  fracell_field* r_raw = nullptr;
  char* report = nullptr;
  check(fracell_solve(p.get(), f.get(), a.R, &u_raw, &r_raw, &report));
  const FieldPtr u(u_raw), residual(r_raw);
  json rep = json::parse(take_string(report));

  const fs::path out = a.out.empty() ? output_dir("") / "solution.field" : fs::path(a.out);
  fs::create_directories(out.parent_path().empty() ? fs::path(".") : out.parent_path());
  check(fracell_field_save(u.get(), out.string().c_str()));
  rep["solution_file"] = out.string();
  if (!a.residual_out.empty()) {
    check(fracell_field_save(residual.get(), a.residual_out.c_str()));
    rep["residual_file"] = a.residual_out;
  }
  if (!a.csv_out.empty()) {
    check(fracell_field_write_csv(u.get(), a.csv_out.c_str()));
    rep["csv_file"] = a.csv_out;
  }
  std::printf("%s\n", rep.dump(2).c_str());
  return kExitOk;
}

struct SobolevArgs {
  std::string field;
  std::vector<std::string> func;
  int dim = 1;
  double extent = 8.0;
  int points = 0;
  std::vector<double> s;
  int bands = 0;
  double min_radius = 0.0;
  bool spectrum = false;
};

int run_sobolev(const SobolevArgs& a) {
  FieldPtr u;
  if (!a.field.empty()) {
    fracell_field* raw = nullptr;
    check(fracell_field_load(a.field.c_str(), &raw));
    u.reset(raw);
  } else {
    u = sample_field(a.func, a.dim, a.extent, a.points > 0 ? a.points : default_points(a.dim));
  }
  if (a.spectrum) {
    char* csv = nullptr;
    check(fracell_shell_spectrum_csv(u.get(), a.bands, &csv));
    std::printf("%s", take_string(csv).c_str());
    return kExitOk;
  }
  json out;
  if (!a.s.empty()) {
    json norms = json::array();
    for (double s : a.s) {
      double n = 0.0;
      check(fracell_sobolev_norm(u.get(), s, &n));
      norms.push_back({{"s", s}, {"norm", n}});
    }
    out["norms"] = norms;
  }
  char* est = nullptr;
  check(fracell_estimate_regularity(u.get(), a.bands, a.min_radius, &est));
  out["estimate"] = json::parse(take_string(est));
  std::printf("%s\n", out.dump(2).c_str());
  return kExitOk;
}

// ---- verify, commutator, experiment ----

std::vector<std::string> split_ids(const std::vector<std::string>& raw) {
  std::vector<std::string> ids;
  for (const auto& chunk : raw) {
    std::stringstream ss(chunk);
    std::string id;
    while (std::getline(ss, id, ',')) {
      if (!id.empty()) ids.push_back(id);
    }
  }
  return ids;
}

int run_verify(const std::vector<std::string>& only) {
  const std::vector<std::string> ids = split_ids(only);
  std::vector<const char*> ptrs;
  for (const auto& id : ids) ptrs.push_back(id.c_str());
  char* out = nullptr;
  int all_pass = 0;
  check(fracell_verify(ptrs.data(), ptrs.size(), &out, &all_pass));
  std::printf("%s\n", take_string(out).c_str());
  return all_pass != 0 ? kExitOk : kExitFailure;
}

int run_commutator(double alpha, const std::string& u_text, const std::string& phi_text) {
  const FunctionPtr u = parse_function(u_text);
  const FunctionPtr phi = parse_function(phi_text);
  char* out = nullptr;
  int pass = 0;
  check(fracell_commutator_check(alpha, u.get(), phi.get(), &out, &pass));
  std::printf("%s\n", take_string(out).c_str());
  return pass != 0 ? kExitOk : kExitFailure;
}

int run_experiment(const std::string& matrix, const std::string& out_flag) {
  std::string matrix_text;
  if (!matrix.empty()) matrix_text = resolve_text(matrix);
  char* csv = nullptr;
  char* rows_json = nullptr;
  check(fracell_experiment_regularity(matrix.empty() ? nullptr : matrix_text.c_str(), &csv, &rows_json));
  const std::string table = take_string(csv);
  const json rows = json::parse(take_string(rows_json));

  const fs::path dir = output_dir(out_flag);
  write_text(dir / "experiment_regularity.csv", table);
  for (const auto& row : rows) {
    write_text(dir / ("bands_" + safe_name(row.at("operator_id").get<std::string>()) + ".dat"),
               row.at("bands").get<std::string>());
  }
  std::printf("%s", table.c_str());
  return kExitOk;
}

// CLI11 takes "-inf" for an option name; glue it to its flag first.
std::vector<std::string> normalize_args(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string cur = argv[i];
    if (cur == "--c" && i + 1 < argc && std::string(argv[i + 1]).rfind('-', 0) == 0) {
      cur += "=" + std::string(argv[++i]);
    }
    args.push_back(cur);
  }
  std::reverse(args.begin(), args.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional differintegrals, elliptic symbols and Sobolev regularity"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fracell_version()));

  DifferintArgs da;
  auto* differint = app.add_subcommand("differint", "Evaluate a differintegral of a test function");
  differint->add_option("--func", da.func, "Catalog name or JSON function spec")->required();
  differint->add_option("--nu", da.nu, "Order (real part); negative values integrate")->required();
  differint->add_option("--nu-im", da.nu_im, "Imaginary part of the order");
  differint->add_option("--c", da.base, "Base point: a number or -inf")->capture_default_str();
  differint->add_option("--method", da.method, "Engine")
      ->check(CLI::IsMember({"quadrature", "fourier", "hankel", "caputo"}))
      ->capture_default_str();
  auto* at = differint->add_option("--at", da.at, "Evaluation points");
  auto* grid = differint->add_option("--grid", da.grid, "Uniform grid x0,x1,count (CSV output)");
  at->excludes(grid);
  differint->add_option("--subintervals", da.subintervals, "Quadrature subintervals N");
  differint->add_option("--grading", da.grading, "Mesh grading exponent");
  differint->add_option("--truncation", da.truncation, "Tail truncation length for c = -inf");
  differint->add_option("--outer", da.outer, "Outer derivative for derivatives")
      ->check(CLI::IsMember({"auto", "analytic", "fd"}));
  differint->add_option("--hankel-nodes", da.hankel_nodes, "Contour nodes");
  differint->add_option("--fourier-extent", da.fourier_extent, "Box length for the Fourier engine");
  differint->add_option("--fourier-points", da.fourier_points, "Box samples for the Fourier engine");

  std::string op;
  double scan_max = 1e4;
  unsigned long long seed = 12345;
  auto* symbol = app.add_subcommand("symbol", "Classify a fractional symbol and bound it from below");
  symbol->add_option("--op", op, "Symbol JSON or @file")->required();
  symbol->add_option("--scan-max", scan_max, "Largest radius for the (C, R) scan")->capture_default_str();
  symbol->add_option("--seed", seed, "Seed for direction sampling in n >= 4")->capture_default_str();

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Apply the cutoff parametrix to a forcing");
  solve->add_option("--op", sa.op, "Symbol JSON or @file")->required();
  solve->add_option("--forcing", sa.forcing, "Forcing spec, one per axis or one for all")->required();
  solve->add_option("--extent", sa.extent, "Box length")->capture_default_str();
  solve->add_option("--points", sa.points, "Samples per axis (power of two)");
  solve->add_option("--R", sa.R, "Cutoff radius override");
  solve->add_option("--out", sa.out, "Solution field file");
  solve->add_option("--residual-out", sa.residual_out, "Residual field file");
  solve->add_option("--csv", sa.csv_out, "Solution CSV");

  SobolevArgs sb;
  auto* sobolev = app.add_subcommand("sobolev", "Sobolev norms and regularity estimate of a field");
  auto* field_opt = sobolev->add_option("--field", sb.field, "Field file");
  auto* func_opt = sobolev->add_option("--func", sb.func, "Function spec, one per axis or one for all");
  field_opt->excludes(func_opt);
  sobolev->add_option("--dim", sb.dim, "Dimension when sampling --func")->capture_default_str();
  sobolev->add_option("--extent", sb.extent, "Box length when sampling --func")->capture_default_str();
  sobolev->add_option("--points", sb.points, "Samples per axis when sampling --func");
  sobolev->add_option("--s", sb.s, "Sobolev exponents to report norms for");
  sobolev->add_option("--bands", sb.bands, "Bands per octave");
  sobolev->add_option("--min-radius", sb.min_radius, "Smallest shell radius");
  sobolev->add_flag("--spectrum", sb.spectrum, "Print the shell spectrum as CSV instead");

  std::vector<std::string> only;
  auto* verify = app.add_subcommand("verify", "Run the identity suite");
  verify->add_option("--only", only, "Comma-separated check ids");

  double alpha = 0.6;
  std::string cu = "step", cphi = R"({"kind":"bump","center":0,"radius":2})";
  auto* commutator = app.add_subcommand("commutator", "Commutator smoothing check for D^alpha and a cutoff");
  commutator->add_option("--alpha", alpha, "Order")->capture_default_str();
  commutator->add_option("--u", cu, "Function spec")->capture_default_str();
  commutator->add_option("--phi", cphi, "Cutoff function spec")->capture_default_str();

  std::string matrix, exp_out;
  auto* experiment = app.add_subcommand("experiment", "Numerical experiments");
  experiment->require_subcommand(1);
  auto* regularity = experiment->add_subcommand("regularity", "Regularity gain matrix");
  regularity->add_option("--matrix", matrix, "Matrix JSON or @file; default matrix if omitted");
  regularity->add_option("--out", exp_out, "Output directory (default FRACELL_OUTPUT_DIR or cwd)");

  try {
    std::vector<std::string> args = normalize_args(argc, argv);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*differint) return run_differint(da);
    if (*symbol) return run_symbol(op, scan_max, seed);
    if (*solve) return run_solve(sa);
    if (*sobolev) {
      if (sb.field.empty() && sb.func.empty()) {
        std::fprintf(stderr, "sobolev: one of --field or --func is required\n");
        return kExitUsage;
      }
      return run_sobolev(sb);
    }
    if (*verify) return run_verify(only);
    if (*commutator) return run_commutator(alpha, cu, cphi);
    if (*regularity) return run_experiment(matrix, exp_out);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitUsage;
  } catch (const CallFailed& e) {
    std::fprintf(stderr, "%s: %s\n", fracell_status_name(e.status), e.message.c_str());
    return kExitFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "Internal: %s\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
