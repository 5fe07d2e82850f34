#include "rope/geometry.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rope {

Point::Point(double x_, double y_) : x(x_), y(y_) {
  if (!std::isfinite(x_) || !std::isfinite(y_)) {
    throw std::invalid_argument("Point: coordinates must be finite");
  }
}

double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
double norm_sq(const Point& a) { return a.x * a.x + a.y * a.y; }
double norm(const Point& a) { return std::hypot(a.x, a.y); }
double distance(const Point& a, const Point& b) { return norm(a - b); }

Segment Segment::between(const Point& p, const Point& q) {
  if (p == q) {
    throw std::invalid_argument("Segment::between: endpoints must differ");
  }
  return Segment(p, q);
}

Segment Segment::point_segment(const Point& p) { return Segment(p, p); }

Polyline::Polyline(std::vector<Point> vs) : vertices(std::move(vs)) {
  if (vertices.empty()) {
    throw std::invalid_argument("Polyline: needs at least one vertex");
  }
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    if (vertices[i] == vertices[i + 1]) {
      throw std::invalid_argument("Polyline: consecutive vertices must differ");
    }
  }
}

Polyline Polyline::reversed() const {
  std::vector<Point> vs(vertices.rbegin(), vertices.rend());
  return Polyline(std::move(vs));
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

int orientation_exact(const Point& a, const Point& b, const Point& c) {
  const mpq_class ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
  const mpq_class det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
  return sgn(det);
}

}  // namespace

int orientation(const Point& a, const Point& b, const Point& c) {
  const double detleft = (b.x - a.x) * (c.y - a.y);
  const double detright = (b.y - a.y) * (c.x - a.x);
  const double det = detleft - detright;
  // Shewchuk-style static filter on the straightforward evaluation.
  const double errbound =
      3.3306690621773724e-16 * (std::fabs(detleft) + std::fabs(detright));
  if (det > errbound) return 1;
  if (det < -errbound) return -1;
  if (detleft == 0.0 && detright == 0.0) return 0;
  return orientation_exact(a, b, c);
}

bool on_segment(const Point& p, const Segment& s) {
  if (s.is_degenerate()) return p == s.p;
  if (orientation(s.p, s.q, p) != 0) return false;
  return std::min(s.p.x, s.q.x) <= p.x && p.x <= std::max(s.p.x, s.q.x) &&
         std::min(s.p.y, s.q.y) <= p.y && p.y <= std::max(s.p.y, s.q.y);
}

namespace {

// Collinear overlap of two segments known to lie on one line; projects onto
// the dominant axis and compares endpoint coordinates exactly.
SegmentIntersection collinear_overlap(const Segment& s1, const Segment& s2) {
  const Point d = s1.q - s1.p;
  const bool use_x = std::fabs(d.x) >= std::fabs(d.y);
  auto key = [&](const Point& p) { return use_x ? p.x : p.y; };

  Point a = s1.p, b = s1.q;
  if (key(a) > key(b)) std::swap(a, b);
  Point c = s2.p, e = s2.q;
  if (key(c) > key(e)) std::swap(c, e);

  const Point lo = key(a) >= key(c) ? a : c;
  const Point hi = key(b) <= key(e) ? b : e;

  SegmentIntersection out;
  if (key(lo) > key(hi)) {
    out.kind = IntersectKind::none;
  } else if (lo == hi) {
    out.kind = IntersectKind::point;
    out.point = lo;
  } else {
    out.kind = IntersectKind::overlap;
    out.overlap_p = lo;
    out.overlap_q = hi;
  }
  return out;
}

}  // namespace

SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2) {
  SegmentIntersection out;

  if (s1.is_degenerate() && s2.is_degenerate()) {
    if (s1.p == s2.p) {
      out.kind = IntersectKind::point;
      out.point = s1.p;
    }
    return out;
  }
  if (s1.is_degenerate() || s2.is_degenerate()) {
    const Point& pt = s1.is_degenerate() ? s1.p : s2.p;
    const Segment& seg = s1.is_degenerate() ? s2 : s1;
    if (on_segment(pt, seg)) {
      out.kind = IntersectKind::point;
      out.point = pt;
    }
    return out;
  }

  const int o1 = orientation(s1.p, s1.q, s2.p);
  const int o2 = orientation(s1.p, s1.q, s2.q);
  const int o3 = orientation(s2.p, s2.q, s1.p);
  const int o4 = orientation(s2.p, s2.q, s1.q);

  if (o1 == 0 && o2 == 0) return collinear_overlap(s1, s2);

  if (o1 * o2 < 0 && o3 * o4 < 0) {
    // Proper crossing; the unique interior point in floating point.
    const Point d1 = s1.q - s1.p;
    const Point d2 = s2.q - s2.p;
    const double denom = cross(d1, d2);
    const double t = cross(s2.p - s1.p, d2) / denom;
    out.kind = IntersectKind::point;
    out.point = s1.at(t);
    return out;
  }

  // Touching cases: an endpoint of one segment lies on the other.
  if (o1 == 0 && on_segment(s2.p, s1)) {
    out.kind = IntersectKind::point;
    out.point = s2.p;
    return out;
  }
  if (o2 == 0 && on_segment(s2.q, s1)) {
    out.kind = IntersectKind::point;
    out.point = s2.q;
    return out;
  }
  if (o3 == 0 && on_segment(s1.p, s2)) {
    out.kind = IntersectKind::point;
    out.point = s1.p;
    return out;
  }
  if (o4 == 0 && on_segment(s1.q, s2)) {
    out.kind = IntersectKind::point;
    out.point = s1.q;
    return out;
  }
  return out;
}

double normalize_angle(double theta) {
  const double two_pi = 2.0 * M_PI;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t = 0.0;
  return t;
}

double angle_at(const Point& prev, const Point& apex, const Point& next,
                const Point& side_ref) {
  if (prev == apex || next == apex || side_ref == apex) {
    throw std::invalid_argument("angle_at: arguments must differ from apex");
  }
  if (orientation(prev, apex, side_ref) == 0 &&
      orientation(next, apex, side_ref) == 0) {
    throw std::invalid_argument("angle_at: degenerate side reference");
  }
  const double tp = std::atan2(prev.y - apex.y, prev.x - apex.x);
  const double tn = std::atan2(next.y - apex.y, next.x - apex.x);
  const double tr = std::atan2(side_ref.y - apex.y, side_ref.x - apex.x);
  const double sector = normalize_angle(tn - tp);  // ccw from prev-ray to next-ray
  const double pos = normalize_angle(tr - tp);
  return pos < sector ? sector : 2.0 * M_PI - sector;
}

double polyline_length(const Polyline& p) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    len += distance(p.vertices[i], p.vertices[i + 1]);
  }
  return len;
}

double point_segment_distance(const Point& p, const Segment& s) {
  if (s.is_degenerate()) return distance(p, s.p);
  const Point d = s.q - s.p;
  const double t = dot(p - s.p, d) / norm_sq(d);
  if (t <= 0.0) return distance(p, s.p);
  if (t >= 1.0) return distance(p, s.q);
  return std::fabs(cross(d, p - s.p)) / norm(d);
}

double point_polyline_distance(const Point& p, const Polyline& line) {
  if (line.size() == 1) return distance(p, line.vertices[0]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const Point& a = line.vertices[i];
    const Point& b = line.vertices[i + 1];
    const Segment s = (a == b) ? Segment::point_segment(a) : Segment::between(a, b);
    best = std::min(best, point_segment_distance(p, s));
  }
  return best;
}

namespace {

struct Quadratic {
  double a = 0.0, b = 0.0, c = 0.0;  // a t^2 + b t + c
};

// Squared distance from the moving point p + t*d to one of the three pieces
// of the distance function of segment [sa, sb], as a quadratic in t.
// piece 0: squared distance to endpoint sa
// piece 1: squared distance to endpoint sb
// piece 2: squared distance to the supporting line
Quadratic piece_quadratic(const Point& p, const Point& d, const Point& sa,
                          const Point& sb, int piece) {
  Quadratic q;
  if (piece == 0 || piece == 1) {
    const Point w = p - (piece == 0 ? sa : sb);
    q.a = norm_sq(d);
    q.b = 2.0 * dot(w, d);
    q.c = norm_sq(w);
  } else {
    const Point e = sb - sa;
    const double inv = 1.0 / norm_sq(e);
    const double c0 = cross(e, p - sa);
    const double c1 = cross(e, d);
    q.a = c1 * c1 * inv;
    q.b = 2.0 * c0 * c1 * inv;
    q.c = c0 * c0 * inv;
  }
  return q;
}

void quadratic_roots(const Quadratic& q, std::vector<double>& out) {
  const double eps = 1e-300;
  if (std::fabs(q.a) < eps) {
    if (std::fabs(q.b) >= eps) out.push_back(-q.c / q.b);
    return;
  }
  const double disc = q.b * q.b - 4.0 * q.a * q.c;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  out.push_back((-q.b + sq) / (2.0 * q.a));
  out.push_back((-q.b - sq) / (2.0 * q.a));
}

struct Site {
  Point a, b;
  bool degenerate;
};

double site_distance(const Point& p, const Site& s) {
  if (s.degenerate) return distance(p, s.a);
  return point_segment_distance(p, Segment::between(s.a, s.b));
}

std::vector<Site> polyline_sites(const Polyline& l) {
  std::vector<Site> sites;
  if (l.size() == 1) {
    sites.push_back({l.vertices[0], l.vertices[0], true});
    return sites;
  }
  for (std::size_t i = 0; i + 1 < l.size(); ++i) {
    sites.push_back({l.vertices[i], l.vertices[i + 1], false});
  }
  return sites;
}

double distance_to_sites(const Point& p, const std::vector<Site>& sites) {
  double best = std::numeric_limits<double>::infinity();
  for (const Site& s : sites) best = std::min(best, site_distance(p, s));
  return best;
}

// Directed Hausdorff distance sup_{x in A} d(x, B). The supremum is attained
// at a vertex of A or at a point of a segment of A equidistant from two
// sites of B (the minimizing site switches there); those crossings satisfy
// piecewise-quadratic equations solved per site pair.
double directed_hausdorff(const Polyline& A, const Polyline& B) {
  const std::vector<Site> sites = polyline_sites(B);

  double best = 0.0;
  for (const Point& v : A.vertices) {
    best = std::max(best, distance_to_sites(v, sites));
  }
  if (A.size() == 1) return best;

  std::vector<double> roots;
  std::vector<double> max_end(sites.size());
  for (std::size_t i = 0; i + 1 < A.size(); ++i) {
    const Point p = A.vertices[i];
    const Point q = A.vertices[i + 1];
    const Point d = q - p;

    double seg_ub = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < sites.size(); ++j) {
      max_end[j] = std::max(site_distance(p, sites[j]), site_distance(q, sites[j]));
      seg_ub = std::min(seg_ub, max_end[j]);
    }
    // d(., B) is a min of convex functions, so on this segment it never
    // exceeds max over the endpoints for the nearest site.
    if (seg_ub <= best) continue;

    for (std::size_t j = 0; j < sites.size(); ++j) {
      if (max_end[j] <= best) continue;
      for (std::size_t k = j + 1; k < sites.size(); ++k) {
        if (max_end[k] <= best) continue;
        roots.clear();
        const int pj_max = sites[j].degenerate ? 0 : 2;
        const int pk_max = sites[k].degenerate ? 0 : 2;
        for (int pj = 0; pj <= pj_max; ++pj) {
          const Quadratic qj = piece_quadratic(p, d, sites[j].a, sites[j].b, pj);
          for (int pk = 0; pk <= pk_max; ++pk) {
            const Quadratic qk = piece_quadratic(p, d, sites[k].a, sites[k].b, pk);
            Quadratic diff{qj.a - qk.a, qj.b - qk.b, qj.c - qk.c};
            quadratic_roots(diff, roots);
          }
        }
        for (double t : roots) {
          if (!(t > 0.0 && t < 1.0)) continue;
          const Point x = Point(p.x + t * d.x, p.y + t * d.y);
          best = std::max(best, distance_to_sites(x, sites));
        }
      }
    }
  }
  return best;
}

}  // namespace

double hausdorff_distance(const Polyline& a, const Polyline& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace rope
