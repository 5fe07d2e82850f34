#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rope/geometry.hpp"

namespace rope {

// Plain-text polygon exchange format:
//   rope-polygon v1
//   b <index>          (optional)
//   a <index>          (optional)
//   ray <dx> <dy>      (optional)
//   <x> <y>            one pair per vertex, counterclockwise
struct PolygonFile {
  std::vector<Point> vertices;
  std::optional<std::size_t> b_index;
  std::optional<std::size_t> a_index;
  std::optional<Point> ray;
};

PolygonFile read_polygon_file(std::istream& in);
PolygonFile read_polygon_file(const std::string& path);
void write_polygon_file(std::ostream& out, const PolygonFile& file);
void write_polygon_file(const std::string& path, const PolygonFile& file);

// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string polygon_file_digest(const PolygonFile& file);

}  // namespace rope
