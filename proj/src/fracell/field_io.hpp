#pragma once

#include <string>

#include "fracell/spectral.hpp"
#include "json.hpp"

namespace fracell {

// Field file: one line of JSON describing the grid, a newline, then
// grid.size() little-endian float64 (re, im) pairs in row-major order.
// Extra header keys in `meta` are stored under "meta".
void save_field(const std::string& path, const Field& u, const nlohmann::json& meta = {});
Field load_field(const std::string& path, nlohmann::json* meta = nullptr);

// Comma-separated samples: 1-D rows are x,re,im; 2-D rows are x,y,re,im.
// A 3-D field is exported as its middle slice along the first axis.
void write_field_csv(const std::string& path, const Field& u);

// Writes `contents` to a sibling temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace fracell
