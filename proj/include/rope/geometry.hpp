#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

// Planar primitives shared by every other module. Branch decisions
// (orientation, segment classification) are exact for arbitrary double
// inputs; constructed coordinates (intersection points) are floating point.

namespace rope {

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point() = default;
  Point(double x_, double y_);

  Point operator+(const Point& o) const { return Point(x + o.x, y + o.y); }
  Point operator-(const Point& o) const { return Point(x - o.x, y - o.y); }
  Point operator*(double k) const { return Point(k * x, k * y); }
  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point& o) const { return !(*this == o); }
};

double dot(const Point& a, const Point& b);
double cross(const Point& a, const Point& b);
double norm(const Point& a);
double norm_sq(const Point& a);
double distance(const Point& a, const Point& b);

// A closed segment [p, q]. A degenerate segment is a single point; it models
// the point-cuts at the two ends of a partition.
struct Segment {
  Point p;
  Point q;

  static Segment between(const Point& p, const Point& q);
  static Segment point_segment(const Point& p);

  bool is_degenerate() const { return p == q; }
  double length() const { return distance(p, q); }
  Point at(double t) const { return Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)); }

 private:
  Segment(const Point& p_, const Point& q_) : p(p_), q(q_) {}
};

// Ordered vertex chain with consecutive vertices distinct.
struct Polyline {
  std::vector<Point> vertices;

  Polyline() = default;
  explicit Polyline(std::vector<Point> vs);

  std::size_t size() const { return vertices.size(); }
  const Point& front() const { return vertices.front(); }
  const Point& back() const { return vertices.back(); }
  Polyline reversed() const;
};

// Sign of the cross product (b-a) x (c-a): +1 counterclockwise, -1
// clockwise, 0 collinear. Exact for all finite double inputs (floating
// filter with a rational fallback).
int orientation(const Point& a, const Point& b, const Point& c);

enum class IntersectKind { none, point, overlap };

struct SegmentIntersection {
  IntersectKind kind = IntersectKind::none;
  Point point;        // valid when kind == point
  Point overlap_p;    // valid when kind == overlap
  Point overlap_q;
};

// Exact classification of the intersection of two closed segments. The
// classification (none / point / overlap) is exact; a proper crossing's
// coordinates are computed in floating point.
SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2);

// True iff p lies on the closed segment, decided exactly.
bool on_segment(const Point& p, const Segment& s);

// Measure of the angle (prev, apex, next) on the side that contains the ray
// apex -> side_ref. The two sides sum to 2*pi. Throws std::invalid_argument
// when side_ref is collinear with both rays and no side can be chosen.
double angle_at(const Point& prev, const Point& apex, const Point& next,
                const Point& side_ref);

// Fixed tolerance for comparing angles against pi; the collinear condition
// is an equality test.
inline constexpr double kAngleTolerance = 1e-12;

double polyline_length(const Polyline& p);

// Exact Hausdorff distance between two polylines as continuous point sets.
// Candidate maxima are polyline vertices plus equidistance crossings of
// site pairs along each segment; no sampling involved.
double hausdorff_distance(const Polyline& a, const Polyline& b);

// Distance from a point to a closed segment / to a polyline.
double point_segment_distance(const Point& p, const Segment& s);
double point_polyline_distance(const Point& p, const Polyline& line);

double normalize_angle(double theta);  // into [0, 2*pi)

}  // namespace rope
