#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rope/geometry.hpp"

namespace rope {

struct ValidationError : std::runtime_error {
  enum class Kind {
    nonfinite,
    too_few_vertices,
    duplicate_vertex,
    zero_area,
    self_intersection,
  };
  Kind kind;
  ValidationError(Kind k, const std::string& what)
      : std::runtime_error(what), kind(k) {}
};

enum class PointLocation { interior, boundary, exterior };

// A simple polygon stored counterclockwise. Construction goes through
// validate(), which rejects self-intersections, repeated vertices and zero
// area, and reverses clockwise input.
class SimplePolygon {
 public:
  SimplePolygon() = default;  // empty placeholder; validate() makes real ones
  static SimplePolygon validate(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }
  const Point& vertex(std::size_t i) const { return verts_[i]; }
  const Point& vertex_mod(std::size_t i) const { return verts_[i % verts_.size()]; }

  double area() const;  // positive
  PointLocation locate(const Point& p) const;
  bool contains(const Point& p) const;  // boundary inclusive

  // True iff vertex i is reflex (interior angle > pi); flat vertices are
  // neither reflex nor convex.
  bool is_reflex(std::size_t i) const;

 private:
  explicit SimplePolygon(std::vector<Point> vs) : verts_(std::move(vs)) {}
  std::vector<Point> verts_;
};

double signed_area(const std::vector<Point>& ring);
PointLocation locate_in_ring(const std::vector<Point>& ring, const Point& p);

// Strict convex hull (no collinear hull vertices); hull vertices are a
// subsequence of the polygon's vertices, counterclockwise, starting at the
// lexicographically smallest vertex. Melkman's deque algorithm.
SimplePolygon convex_hull(const SimplePolygon& p);
std::vector<std::size_t> convex_hull_indices(const SimplePolygon& p);

// Half-open is the wrong model here: blocked direction sets are closed, the
// free set is open. Intervals run counterclockwise from start to end.
struct AngleInterval {
  double start = 0.0;
  double end = 0.0;
  double width() const { return normalize_angle(end - start); }
};

struct VisibilityCertificate {
  std::size_t vertex_index = 0;
  Point ray_direction;                   // unit vector
  std::vector<AngleInterval> free_cone;  // open free intervals, sorted by start
};

// Directions from vertex i along which a ray escapes without touching the
// polygon again, computed by subtracting the angular interval occluded by
// every non-incident edge plus the interior cone at the vertex. Returns the
// midpoint direction of the widest free interval, or nullopt when the vertex
// is not visible from infinity.
std::optional<VisibilityCertificate> visibility_from_infinity(
    const SimplePolygon& p, std::size_t vertex_index);

// Verifies a caller-supplied ray direction instead of choosing one.
std::optional<VisibilityCertificate> visibility_with_ray(
    const SimplePolygon& p, std::size_t vertex_index, const Point& direction);

struct MonotoneSplit {
  bool is_monotone = false;
  std::size_t min_index = 0;  // lexicographically smallest vertex
  std::size_t max_index = 0;  // lexicographically largest vertex
};

// True iff the boundary splits at the leftmost/rightmost vertices into two
// x-monotone chains (vertical edges allowed).
MonotoneSplit is_x_monotone_boundary(const SimplePolygon& p);

}  // namespace rope
