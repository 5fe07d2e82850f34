#pragma once

#include <array>

#include "rope/polygon.hpp"

namespace rope {

struct Rectangle {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  // Corners counterclockwise starting at the lower-left; edge k runs from
  // corner k to corner (k+1)%4.
  Point corner(int k) const;
  double diagonal() const;
  bool strictly_contains(const Point& p) const;
};

// Axis-aligned box of the polygon inflated by margin_fraction times the
// bounding-box diagonal on every side.
Rectangle bounding_rectangle(const SimplePolygon& p, double margin_fraction);

// The auxiliary polygon: the rectangle minus the polygon interior, cut open
// along the segment from b to the rectangle so the region becomes simply
// connected. The two cut walls coincide geometrically; the boundary chain
// keeps them combinatorially distinct.
//
// chain layout (counterclockwise, interior on the left):
//   [0]            b_tilde           (copy of b)
//   [1]            c_tilde           (copy of c)
//   [2..5]         rectangle corners
//   [6]  = c_pos   c                 (ray exit on the rectangle)
//   [7]  = b_pos   b
//   [8..]          remaining polygon vertices in clockwise order
// B1 = chain[0..b_pos] (edges 0..b_pos-1), B2 = the rest back to b_tilde.
struct RopeDomain {
  std::vector<Point> chain;
  std::size_t c_tilde_pos = 1;
  std::size_t c_pos = 0;
  std::size_t b_pos = 0;
  Rectangle rect;
  SimplePolygon polygon;
  std::size_t b_index = 0;
  Point ray_direction;
  double margin_fraction = 0.0;

  const Point& b() const { return chain[b_pos]; }
  const Point& b_tilde() const { return chain[0]; }
  const Point& c() const { return chain[c_pos]; }

  std::size_t edge_count() const { return chain.size(); }
  Segment edge(std::size_t k) const;
  bool edge_on_b1(std::size_t k) const { return k < b_pos; }
  // The two geometrically coincident cut walls.
  std::size_t wall_edge_b_tilde() const { return 0; }
  std::size_t wall_edge_b() const { return b_pos - 1; }

  double diagonal() const { return rect.diagonal(); }
  PointLocation locate(const Point& p) const { return locate_in_ring(chain, p); }
};

// Step (A): insert the cut [b, c] and its copy into the boundary description
// of rect \ int(polygon). The certificate must belong to b_index; if the ray
// exits through a rectangle corner the ray is re-picked once at the free
// cone's one-third point, then the construction fails loudly.
RopeDomain build_domain(const SimplePolygon& p, std::size_t b_index,
                        const VisibilityCertificate& cert,
                        double margin_fraction = 0.25);

// Post-solve sanity check: the path may meet B1 only at the positions of b
// and b_tilde.
bool sp_avoids_b1(const Polyline& path, const RopeDomain& d);

}  // namespace rope
