#include "rope/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace rope {

double signed_area(const std::vector<Point>& ring) {
  double twice = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

PointLocation locate_in_ring(const std::vector<Point>& ring, const Point& p) {
  const std::size_t n = ring.size();
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    if (a == b) continue;
    if (on_segment(p, Segment::between(a, b))) return PointLocation::boundary;
    // Crossing test for the upward ray from p, exact via orientation.
    if ((a.y > p.y) != (b.y > p.y)) {
      const int o = orientation(a, b, p);
      if ((b.y > a.y && o > 0) || (b.y < a.y && o < 0)) inside = !inside;
    }
  }
  return inside ? PointLocation::interior : PointLocation::exterior;
}

SimplePolygon SimplePolygon::validate(std::vector<Point> vertices) {
  using Kind = ValidationError::Kind;
  for (const Point& v : vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw ValidationError(Kind::nonfinite, "polygon has non-finite coordinates");
    }
  }
  if (vertices.size() < 3) {
    throw ValidationError(Kind::too_few_vertices, "polygon needs at least 3 vertices");
  }

  {
    std::vector<Point> sorted = vertices;
    std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) {
      return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      if (sorted[i] == sorted[i + 1]) {
        throw ValidationError(Kind::duplicate_vertex, "polygon repeats a vertex");
      }
    }
  }

  const std::size_t n = vertices.size();
  // Spikes: consecutive edges folding back over each other.
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices[(i + n - 1) % n];
    const Point& b = vertices[i];
    const Point& c = vertices[(i + 1) % n];
    if (orientation(a, b, c) == 0 && dot(a - b, c - b) > 0.0) {
      throw ValidationError(Kind::self_intersection, "polygon folds back on itself");
    }
  }
  // Pairwise edge test; adjacent edges may share only their common endpoint.
  for (std::size_t i = 0; i < n; ++i) {
    const Segment ei = Segment::between(vertices[i], vertices[(i + 1) % n]);
    const double ix_lo = std::min(ei.p.x, ei.q.x), ix_hi = std::max(ei.p.x, ei.q.x);
    const double iy_lo = std::min(ei.p.y, ei.q.y), iy_hi = std::max(ei.p.y, ei.q.y);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point& jp = vertices[j];
      const Point& jq = vertices[(j + 1) % n];
      if (std::max(jp.x, jq.x) < ix_lo || std::min(jp.x, jq.x) > ix_hi ||
          std::max(jp.y, jq.y) < iy_lo || std::min(jp.y, jq.y) > iy_hi) {
        continue;
      }
      const Segment ej = Segment::between(jp, jq);
      const SegmentIntersection isect = segment_intersection(ei, ej);
      if (isect.kind == IntersectKind::none) continue;
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (isect.kind == IntersectKind::overlap || !adjacent) {
        throw ValidationError(Kind::self_intersection, "polygon edges intersect");
      }
      const Point& shared = (j == i + 1) ? vertices[j] : vertices[0];
      if (isect.point != shared) {
        throw ValidationError(Kind::self_intersection, "polygon edges intersect");
      }
    }
  }

  const double area2 = signed_area(vertices);
  if (area2 == 0.0) {
    throw ValidationError(Kind::zero_area, "polygon has zero signed area");
  }
  if (area2 < 0.0) std::reverse(vertices.begin(), vertices.end());
  return SimplePolygon(std::move(vertices));
}

double SimplePolygon::area() const { return signed_area(verts_); }

PointLocation SimplePolygon::locate(const Point& p) const {
  return locate_in_ring(verts_, p);
}

bool SimplePolygon::contains(const Point& p) const {
  return locate(p) != PointLocation::exterior;
}

bool SimplePolygon::is_reflex(std::size_t i) const {
  const std::size_t n = verts_.size();
  return orientation(verts_[(i + n - 1) % n], verts_[i], verts_[(i + 1) % n]) < 0;
}

std::vector<std::size_t> convex_hull_indices(const SimplePolygon& p) {
  const std::vector<Point>& v = p.vertices();
  const std::size_t n = v.size();

  // Melkman over the simple closed chain; deque front == back.
  std::deque<std::size_t> d;
  auto orient = [&](std::size_t a, std::size_t b, std::size_t c) {
    return orientation(v[a], v[b], v[c]);
  };

  std::size_t start = 2;
  while (start < n && orient(0, 1, start) == 0) ++start;
  if (start == n) {
    throw std::invalid_argument("convex_hull: all vertices collinear");
  }
  // Rebase so the first three vertices are non-collinear while keeping the
  // polygon's cyclic order (skipped vertices are collinear between 1 and
  // start and cannot be strict hull vertices).
  if (orient(0, 1, start) > 0) {
    d = {start, 0, 1, start};
  } else {
    d = {start, 1, 0, start};
  }

  for (std::size_t i = start + 1; i < n; ++i) {
    if (orient(d[d.size() - 2], d[d.size() - 1], i) > 0 && orient(d[0], d[1], i) > 0) {
      continue;
    }
    while (d.size() >= 2 && orient(d[d.size() - 2], d[d.size() - 1], i) <= 0) {
      d.pop_back();
    }
    d.push_back(i);
    while (d.size() >= 2 && orient(d[0], d[1], i) <= 0) {
      d.pop_front();
    }
    d.push_front(i);
  }

  d.pop_front();  // front duplicates back
  std::vector<std::size_t> hull(d.begin(), d.end());

  // Canonical start: lexicographically smallest vertex.
  std::size_t best = 0;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const Point& a = v[hull[i]];
    const Point& b = v[hull[best]];
    if (a.x < b.x || (a.x == b.x && a.y < b.y)) best = i;
  }
  std::rotate(hull.begin(), hull.begin() + static_cast<std::ptrdiff_t>(best), hull.end());
  return hull;
}

SimplePolygon convex_hull(const SimplePolygon& p) {
  std::vector<Point> pts;
  for (std::size_t i : convex_hull_indices(p)) pts.push_back(p.vertex(i));
  return SimplePolygon::validate(std::move(pts));
}

namespace {

struct BlockedInterval {
  double start;
  double width;  // ccw extent, 0 for a single blocked direction
};

// Free intervals in [0, 2*pi) after removing the closed blocked set.
std::vector<AngleInterval> complement_of(std::vector<BlockedInterval> blocked) {
  // Split wrap-around intervals.
  std::vector<std::pair<double, double>> flat;  // [start, end] with end >= start
  for (const BlockedInterval& b : blocked) {
    const double s = normalize_angle(b.start);
    const double e = s + b.width;
    if (e > 2.0 * M_PI) {
      flat.emplace_back(s, 2.0 * M_PI);
      flat.emplace_back(0.0, e - 2.0 * M_PI);
    } else {
      flat.emplace_back(s, e);
    }
  }
  std::sort(flat.begin(), flat.end());

  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : flat) {
    if (!merged.empty() && iv.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, iv.second);
    } else {
      merged.push_back(iv);
    }
  }

  std::vector<AngleInterval> free;
  if (merged.empty()) {
    free.push_back({0.0, 2.0 * M_PI});
    return free;
  }
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    if (merged[i].second < merged[i + 1].first) {
      free.push_back({merged[i].second, merged[i + 1].first});
    }
  }
  // Gap wrapping through 0.
  const double tail = merged.back().second;
  const double head = merged.front().first;
  if (tail < 2.0 * M_PI || head > 0.0) {
    if (normalize_angle(head - tail) > 0.0 || (tail == 2.0 * M_PI && head > 0.0)) {
      if (!(tail == 2.0 * M_PI && head == 0.0)) {
        free.push_back({normalize_angle(tail), head == 0.0 ? 2.0 * M_PI : head});
      }
    }
  }
  return free;
}

std::vector<AngleInterval> free_directions(const SimplePolygon& p, std::size_t vi) {
  const std::vector<Point>& v = p.vertices();
  const std::size_t n = v.size();
  const Point w = v[vi];
  const Point prev = v[(vi + n - 1) % n];
  const Point next = v[(vi + 1) % n];

  auto dir = [&](const Point& q) {
    return std::atan2(q.y - w.y, q.x - w.x);
  };

  std::vector<BlockedInterval> blocked;
  // Interior cone: ccw from the outgoing edge direction to the incoming one.
  {
    const double s = dir(next);
    const double e = dir(prev);
    blocked.push_back({s, normalize_angle(e - s)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (i == vi || (i + 1) % n == vi) continue;  // incident edges
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    const double da = dir(a);
    const double db = dir(b);
    const int o = orientation(w, a, b);
    if (o > 0) {
      blocked.push_back({da, normalize_angle(db - da)});
    } else if (o < 0) {
      blocked.push_back({db, normalize_angle(da - db)});
    } else {
      blocked.push_back({da, 0.0});  // edge seen edge-on: one direction
    }
  }
  return complement_of(std::move(blocked));
}

}  // namespace

std::optional<VisibilityCertificate> visibility_from_infinity(
    const SimplePolygon& p, std::size_t vertex_index) {
  if (vertex_index >= p.size()) {
    throw std::invalid_argument("visibility_from_infinity: bad vertex index");
  }
  std::vector<AngleInterval> free = free_directions(p, vertex_index);
  if (free.empty()) return std::nullopt;

  std::size_t widest = 0;
  for (std::size_t i = 1; i < free.size(); ++i) {
    const double wi = free[i].width();
    const double wb = free[widest].width();
    if (wi > wb || (wi == wb && free[i].start < free[widest].start)) widest = i;
  }
  const double mid = normalize_angle(free[widest].start + 0.5 * free[widest].width());

  VisibilityCertificate cert;
  cert.vertex_index = vertex_index;
  cert.ray_direction = Point(std::cos(mid), std::sin(mid));
  cert.free_cone = std::move(free);
  return cert;
}

std::optional<VisibilityCertificate> visibility_with_ray(
    const SimplePolygon& p, std::size_t vertex_index, const Point& direction) {
  if (vertex_index >= p.size()) {
    throw std::invalid_argument("visibility_with_ray: bad vertex index");
  }
  const double len = norm(direction);
  if (len == 0.0) {
    throw std::invalid_argument("visibility_with_ray: zero direction");
  }
  std::vector<AngleInterval> free = free_directions(p, vertex_index);
  const double theta = normalize_angle(std::atan2(direction.y, direction.x));
  for (const AngleInterval& iv : free) {
    const double off = normalize_angle(theta - iv.start);
    if (off > 0.0 && off < iv.width()) {
      VisibilityCertificate cert;
      cert.vertex_index = vertex_index;
      cert.ray_direction = Point(direction.x / len, direction.y / len);
      cert.free_cone = std::move(free);
      return cert;
    }
  }
  return std::nullopt;
}

MonotoneSplit is_x_monotone_boundary(const SimplePolygon& p) {
  const std::vector<Point>& v = p.vertices();
  const std::size_t n = v.size();

  MonotoneSplit out;
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i].x < v[lo].x || (v[i].x == v[lo].x && v[i].y < v[lo].y)) lo = i;
    if (v[i].x > v[hi].x || (v[i].x == v[hi].x && v[i].y > v[hi].y)) hi = i;
  }
  out.min_index = lo;
  out.max_index = hi;

  // Walk lo -> hi: x must never decrease; hi -> lo: never increase.
  out.is_monotone = true;
  for (std::size_t i = lo; i != hi; i = (i + 1) % n) {
    if (v[(i + 1) % n].x < v[i].x) {
      out.is_monotone = false;
      return out;
    }
  }
  for (std::size_t i = hi; i != lo; i = (i + 1) % n) {
    if (v[(i + 1) % n].x > v[i].x) {
      out.is_monotone = false;
      return out;
    }
  }
  return out;
}

}  // namespace rope
