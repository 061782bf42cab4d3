#pragma once

#include "aer/front.hpp"
#include "aer/grid.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace aer {

// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

// CSV matrix: header row "y\x,x_0,...,x_n", then one row per y_j: "y_j,v_0j,...,v_nj".
// Numbers use 17 significant digits so a write/read round trip is exact.
std::string field_csv(const Grid2D& grid, int j_begin, int j_end, const std::vector<double>& values);
std::string field_csv(const Field2D& f);
void write_field_csv(const std::string& path, const Field2D& f);

// Reads a full-grid CSV written by write_field_csv; the grid is rebuilt from the coordinates.
Field2D read_field_csv(const std::string& path);
Field2D parse_field_csv(const std::string& text, const std::string& origin = "<csv>");

// Long format: time,x,h0,h0x.
std::string front_csv(const FrontCurve& front);

std::string format_double(double v);

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace aer
