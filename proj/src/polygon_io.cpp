#include "rope/polygon_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rope {

namespace {

std::string format_coord(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PolygonFile read_polygon_file(std::istream& in) {
  PolygonFile file;
  std::string line;
  if (!std::getline(in, line) || line.rfind("rope-polygon v1", 0) != 0) {
    throw std::runtime_error("polygon file: missing 'rope-polygon v1' header");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank line
    if (first == "b" || first == "a") {
      std::size_t idx;
      if (!(ls >> idx)) {
        throw std::runtime_error("polygon file: bad anchor at line " + std::to_string(lineno));
      }
      (first == "b" ? file.b_index : file.a_index) = idx;
    } else if (first == "ray") {
      double dx, dy;
      if (!(ls >> dx >> dy)) {
        throw std::runtime_error("polygon file: bad ray at line " + std::to_string(lineno));
      }
      file.ray = Point(dx, dy);
    } else {
      double x, y;
      try {
        x = std::stod(first);
      } catch (const std::exception&) {
        throw std::runtime_error("polygon file: unexpected token at line " + std::to_string(lineno));
      }
      if (!(ls >> y)) {
        throw std::runtime_error("polygon file: vertex needs two coordinates at line " +
                                 std::to_string(lineno));
      }
      file.vertices.push_back(Point(x, y));
    }
  }
  if ((file.b_index && *file.b_index >= file.vertices.size()) ||
      (file.a_index && *file.a_index >= file.vertices.size())) {
    throw std::runtime_error("polygon file: anchor index out of range");
  }
  return file;
}

PolygonFile read_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open polygon file: " + path);
  return read_polygon_file(in);
}

void write_polygon_file(std::ostream& out, const PolygonFile& file) {
  out << "rope-polygon v1\n";
  if (file.b_index) out << "b " << *file.b_index << "\n";
  if (file.a_index) out << "a " << *file.a_index << "\n";
  if (file.ray) {
    out << "ray " << format_coord(file.ray->x) << " " << format_coord(file.ray->y) << "\n";
  }
  for (const Point& v : file.vertices) {
    out << format_coord(v.x) << " " << format_coord(v.y) << "\n";
  }
}

void write_polygon_file(const std::string& path, const PolygonFile& file) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write polygon file: " + path);
  write_polygon_file(out, file);
}

std::string polygon_file_digest(const PolygonFile& file) {
  std::ostringstream canon;
  write_polygon_file(canon, file);
  const std::string bytes = canon.str();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace rope
