#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rope/polygon.hpp"

namespace rope {

inline constexpr std::size_t kNoVertex = static_cast<std::size_t>(-1);

// Triangulation of a simply connected region with dual-tree adjacency and
// exact funnel geodesics. Meshes of two simple pieces sharing an edge can be
// glued; the dual stays a tree, so sleeves remain unique. Vertices keep
// their identity, which lets geometrically coincident points (the two walls
// of a cut) stay combinatorially distinct.
class Triangulation {
 public:
  struct Tri {
    std::array<std::size_t, 3> v;   // ccw
    std::array<int, 3> nbr;         // across edge (v[k], v[k+1]); -1 = boundary
  };

  static Triangulation from_polygon(const SimplePolygon& poly);

  // Glue b onto a, identifying b's vertices (bu, bv) with a's (au, av).
  // The identified edge must be a boundary edge of both meshes. b_remap, if
  // given, receives the mapping from b's vertex ids to the glued mesh's.
  static Triangulation glue(const Triangulation& a, std::size_t au, std::size_t av,
                            const Triangulation& b, std::size_t bu, std::size_t bv,
                            std::vector<std::size_t>* b_remap = nullptr);

  const std::vector<Point>& points() const { return pts_; }
  const std::vector<Tri>& triangles() const { return tris_; }
  std::size_t glue_offset() const { return glue_offset_; }  // first triangle of the glued-on mesh

  double area() const;

  // First triangle containing p (boundary inclusive) in index order, so
  // points on diagonals resolve to the lower-indexed triangle. Returns -1
  // if p is outside. The search can be restricted to [lo, hi).
  int locate(const Point& p, std::size_t lo = 0, std::size_t hi = kNoVertex) const;

  // The unique triangle having boundary edge {u, v}; -1 if none.
  int triangle_with_boundary_edge(std::size_t u, std::size_t v) const;
  // Lowest-indexed triangle incident to vertex vid; -1 if none.
  int triangle_of_vertex(std::size_t vid) const;

  struct PathResult {
    Polyline path;
    std::vector<std::size_t> turn_vertices;  // mesh vertex ids of interior turns
  };

  // Exact geodesic between two located points. Triangle hints come from
  // locate()/triangle_with_boundary_edge(); all turn decisions use exact
  // orientation, so paths through collinear chains are reproducible.
  PathResult geodesic(const Point& x, int tri_x, const Point& y, int tri_y) const;

 private:
  std::vector<Point> pts_;
  std::vector<Tri> tris_;
  std::size_t glue_offset_ = 0;
  void build_adjacency();
};

struct GeodesicPath {
  Polyline path;
  std::vector<std::size_t> interior_vertex_indices;  // polygon/chain vertex ids of turns
};

// Ear-clipping triangulation of a simple polygon (public contract; the
// richer Triangulation class above is the same structure).
Triangulation triangulate(const SimplePolygon& p);

// Exact geodesic inside a simple polygon via triangulation sleeve + funnel.
// Throws std::invalid_argument when an endpoint lies outside.
GeodesicPath shortest_path(const SimplePolygon& p, const Point& x, const Point& y);

// Independent oracle: visibility graph over {x, y} and the reflex vertices,
// Dijkstra over Euclidean weights.
GeodesicPath vg_shortest_path(const SimplePolygon& p, const Point& x, const Point& y);

// Oracle variant on a raw boundary ring whose endpoints are ring vertices
// addressed by index. Handles rings with coincident duplicate vertices (the
// cut walls of a rope domain); edges listed in overlap_blocked_edges may not
// be ridden along. Interior-cone tests at ring vertices keep paths from
// slipping through zero-width cuts.
GeodesicPath vg_shortest_path_on_chain(const std::vector<Point>& ring,
                                       std::size_t start_vid, std::size_t goal_vid,
                                       const std::vector<std::size_t>& overlap_blocked_edges = {});

// The interior path vertex adjacent to the start (or end); nullopt for a
// single-segment path.
std::optional<Point> first_interior_vertex(const GeodesicPath& g, bool from_start);

// Removes interior vertices the path passes through without turning
// (exactly collinear, strictly between their neighbours).
void drop_collinear_vertices(GeodesicPath& g);

}  // namespace rope
