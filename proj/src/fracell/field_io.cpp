#include "fracell/field_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fracell {

namespace {

using nlohmann::json;


void put_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

double get_f64(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIoError, "cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) fail(ErrorCode::kIoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::kIoError, "cannot move " + tmp.string() + " into place");
  }
}

void save_field(const std::string& path, const Field& u, const json& meta) {
  u.validate();
  json header = {{"format", "fracell-field"}, {"version", 1},        {"dim", u.grid.dim},
                 {"extent", u.grid.extent},   {"points", u.grid.points}, {"dtype", "float64-pairs"},
                 {"endian", "little"}};
  if (!meta.is_null()) header["meta"] = meta;
  std::string out = header.dump();
  out.push_back('\n');
  out.reserve(out.size() + 16 * u.values.size());
  for (const cplx& v : u.values) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
  write_file_atomic(path, out);
}

Field load_field(const std::string& path, json* meta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kIoError, "empty field file " + path);
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, std::string("bad field header: ") + e.what());
  }
  if (header.value("format", "") != "fracell-field" || header.value("dtype", "") != "float64-pairs") {
    fail(ErrorCode::kParseError, "not a field file: " + path);
  }
  Field u;
  try {
    u.grid.dim = header.at("dim").get<int>();
    u.grid.extent = header.at("extent").get<double>();
    u.grid.points = header.at("points").get<int>();
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, std::string("bad field header: ") + e.what());
  }
  u.grid.validate();
  const std::size_t n = u.grid.size();
  std::string payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (payload.size() != 16 * n) fail(ErrorCode::kIoError, "field payload has the wrong length");
  const auto* p = reinterpret_cast<const unsigned char*>(payload.data());
  u.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) u.values[i] = {get_f64(p + 16 * i), get_f64(p + 16 * i + 8)};
  if (meta != nullptr) *meta = header.value("meta", json());
  return u;
}

void write_field_csv(const std::string& path, const Field& u) {
  u.validate();
  const BoxGrid& g = u.grid;
  const int m = g.points;
  std::ostringstream out;
  if (g.dim == 1) {
    out << "x,re,im\n";
    for (int i = 0; i < m; ++i) {
      out << fmt(g.coordinate(i)) << ',' << fmt(u.values[i].real()) << ',' << fmt(u.values[i].imag()) << '\n';
    }
  } else {
    out << "x,y,re,im\n";
    const std::size_t plane = static_cast<std::size_t>(m) * m;
    const std::size_t base = g.dim == 3 ? static_cast<std::size_t>(m / 2) * plane : 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const cplx v = u.values[base + static_cast<std::size_t>(i) * m + j];
        out << fmt(g.coordinate(i)) << ',' << fmt(g.coordinate(j)) << ',' << fmt(v.real()) << ','
            << fmt(v.imag()) << '\n';
      }
    }
  }
  write_file_atomic(path, out.str());
}

}  // namespace fracell
