#include "rope/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rope {

Point Rectangle::corner(int k) const {
  switch (k & 3) {
    case 0: return Point(xmin, ymin);
    case 1: return Point(xmax, ymin);
    case 2: return Point(xmax, ymax);
    default: return Point(xmin, ymax);
  }
}

double Rectangle::diagonal() const {
  return std::hypot(xmax - xmin, ymax - ymin);
}

bool Rectangle::strictly_contains(const Point& p) const {
  return xmin < p.x && p.x < xmax && ymin < p.y && p.y < ymax;
}

Rectangle bounding_rectangle(const SimplePolygon& p, double margin_fraction) {
  if (!(margin_fraction > 0.0)) {
    throw std::invalid_argument("bounding_rectangle: margin must be positive");
  }
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Point& v : p.vertices()) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const double pad = margin_fraction * std::hypot(xmax - xmin, ymax - ymin);
  return Rectangle{xmin - pad, ymin - pad, xmax + pad, ymax + pad};
}

Segment RopeDomain::edge(std::size_t k) const {
  return Segment::between(chain[k], chain[(k + 1) % chain.size()]);
}

namespace {

// Exit point of the ray from b in direction d through the rectangle
// boundary; coordinates on the hit side are snapped exactly.
Point ray_rectangle_exit(const Rectangle& r, const Point& b, const Point& d) {
  double tx = std::numeric_limits<double>::infinity();
  double snap_x = 0.0;
  if (d.x > 0.0) {
    tx = (r.xmax - b.x) / d.x;
    snap_x = r.xmax;
  } else if (d.x < 0.0) {
    tx = (r.xmin - b.x) / d.x;
    snap_x = r.xmin;
  }
  double ty = std::numeric_limits<double>::infinity();
  double snap_y = 0.0;
  if (d.y > 0.0) {
    ty = (r.ymax - b.y) / d.y;
    snap_y = r.ymax;
  } else if (d.y < 0.0) {
    ty = (r.ymin - b.y) / d.y;
    snap_y = r.ymin;
  }
  if (tx <= ty) {
    return Point(snap_x, b.y + tx * d.y);
  }
  return Point(b.x + ty * d.x, snap_y);
}

bool is_rect_corner(const Rectangle& r, const Point& p) {
  for (int k = 0; k < 4; ++k) {
    if (p == r.corner(k)) return true;
  }
  return false;
}

int rect_edge_of(const Rectangle& r, const Point& p) {
  for (int k = 0; k < 4; ++k) {
    if (on_segment(p, Segment::between(r.corner(k), r.corner(k + 1)))) return k;
  }
  return -1;
}

}  // namespace

RopeDomain build_domain(const SimplePolygon& p, std::size_t b_index,
                        const VisibilityCertificate& cert,
                        double margin_fraction) {
  if (b_index >= p.size() || cert.vertex_index != b_index) {
    throw std::invalid_argument("build_domain: certificate does not match b_index");
  }
  const Rectangle rect = bounding_rectangle(p, margin_fraction);
  const Point b = p.vertex(b_index);

  Point dir = cert.ray_direction;
  Point c = ray_rectangle_exit(rect, b, dir);
  if (is_rect_corner(rect, c)) {
    // Measure-zero degeneracy: re-pick deterministically inside the free cone.
    if (cert.free_cone.empty()) {
      throw std::runtime_error("build_domain: ray exits through a corner and no free cone given");
    }
    std::size_t widest = 0;
    for (std::size_t i = 1; i < cert.free_cone.size(); ++i) {
      if (cert.free_cone[i].width() > cert.free_cone[widest].width()) widest = i;
    }
    const double theta = normalize_angle(cert.free_cone[widest].start +
                                         cert.free_cone[widest].width() / 3.0);
    dir = Point(std::cos(theta), std::sin(theta));
    c = ray_rectangle_exit(rect, b, dir);
    if (is_rect_corner(rect, c)) {
      throw std::runtime_error("build_domain: ray exits through a rectangle corner");
    }
  }

  // The cut may touch the polygon only at b.
  {
    const Segment cut = Segment::between(b, c);
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
      const SegmentIntersection isect = segment_intersection(
          cut, Segment::between(p.vertex(i), p.vertex((i + 1) % n)));
      if (isect.kind == IntersectKind::overlap ||
          (isect.kind == IntersectKind::point && isect.point != b)) {
        throw std::invalid_argument("build_domain: ray intersects the polygon");
      }
    }
  }

  const int c_edge = rect_edge_of(rect, c);
  if (c_edge < 0) {
    throw std::logic_error("build_domain: exit point missed the rectangle");
  }

  RopeDomain d;
  d.rect = rect;
  d.polygon = p;
  d.b_index = b_index;
  d.ray_direction = dir;
  d.margin_fraction = margin_fraction;

  d.chain.push_back(b);  // b_tilde
  d.chain.push_back(c);  // c_tilde
  for (int k = 1; k <= 4; ++k) {
    d.chain.push_back(rect.corner(c_edge + k));
  }
  d.c_pos = d.chain.size();
  d.chain.push_back(c);
  d.b_pos = d.chain.size();
  d.chain.push_back(b);
  const std::size_t n = p.size();
  for (std::size_t k = 1; k < n; ++k) {
    d.chain.push_back(p.vertex((b_index + n - k) % n));
  }

  if (signed_area(d.chain) <= 0.0) {
    throw std::logic_error("build_domain: chain is not counterclockwise");
  }
  return d;
}

bool sp_avoids_b1(const Polyline& path, const RopeDomain& d) {
  const Point& anchor = d.b_tilde();
  for (std::size_t k = 0; k < d.b_pos; ++k) {
    const Segment wall = d.edge(k);
    if (path.size() == 1) {
      if (on_segment(path.vertices[0], wall) && path.vertices[0] != anchor) return false;
      continue;
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const Segment seg = Segment::between(path.vertices[i], path.vertices[i + 1]);
      const SegmentIntersection isect = segment_intersection(seg, wall);
      if (isect.kind == IntersectKind::overlap) return false;
      if (isect.kind == IntersectKind::point && isect.point != anchor) return false;
    }
  }
  return true;
}

}  // namespace rope
