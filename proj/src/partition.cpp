#include "rope/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rope {

namespace {

Point anchor_point(const RopeDomain& d, const ChainAnchor& a) {
  const Point& p = d.chain[a.edge];
  const Point& q = d.chain[(a.edge + 1) % d.chain.size()];
  return Point(p.x + a.t * (q.x - p.x), p.y + a.t * (q.y - p.y));
}

// Chain vertices strictly between two anchors, walking forward.
void append_chain_between(std::vector<Point>& out, const RopeDomain& d,
                          const ChainAnchor& from, const ChainAnchor& to) {
  const std::size_t m = d.chain.size();
  std::size_t k = (from.edge + 1) % m;  // first vertex after `from`
  const std::size_t stop = to.t > 0.0 ? (to.edge + 1) % m : to.edge;
  while (k != stop) {
    out.push_back(d.chain[k]);
    k = (k + 1) % m;
  }
}

struct JourneyLeg {
  double start_d = 0.0;   // unrolled start offset
  double end_d = 0.0;
  bool top = false;       // true when the leg runs on the upper chain (x decreasing)
  // Edges of the polygon making up the leg, as (journey step, P edge index).
  struct Edge {
    std::size_t p_edge;   // ccw polygon edge index
    double d0, d1;        // unrolled offsets of its endpoints
    Point a, b;           // edge endpoints in journey direction
  };
  std::vector<Edge> edges;
};

std::vector<JourneyLeg> journey_legs(const RopeDomain& d) {
  const SimplePolygon& p = d.polygon;
  const std::size_t n = p.size();

  std::vector<JourneyLeg> legs;
  double offset = 0.0;
  int cur_dir = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = (d.b_index + k) % n;
    const Point a = p.vertex(j);
    const Point b = p.vertex((j + 1) % n);
    const double dx = b.x - a.x;
    const int dir = (dx > 0.0) - (dx < 0.0);
    if (dir != 0 && dir != cur_dir) {
      legs.emplace_back();
      legs.back().start_d = offset;
      legs.back().end_d = offset;
      legs.back().top = dir < 0;
      cur_dir = dir;
    }
    if (legs.empty()) continue;  // leading vertical edges carry no stations
    JourneyLeg& leg = legs.back();
    leg.edges.push_back({j, offset, offset + std::fabs(dx), a, b});
    offset += std::fabs(dx);
    leg.end_d = offset;
  }
  return legs;
}

// Chain edge index hosting ccw polygon edge j (the chain walks the polygon
// clockwise starting at b).
std::size_t chain_edge_of_polygon_edge(const RopeDomain& d, std::size_t j) {
  const std::size_t n = d.polygon.size();
  const std::size_t m = (d.b_index + n - 1 - j) % n;
  return d.b_pos + m;
}

struct StationCut {
  double x = 0.0;
  bool top = false;
  Point v;
  ChainAnchor v_anchor;
};

// Vertical chord at the station: the B2 endpoint on the hosting polygon
// edge, then the nearest B1 point straight above (top) or below (bottom),
// which is either the rectangle side or the cut wall.
CuttingSegment build_cut(const RopeDomain& d, const StationCut& st) {
  CuttingSegment cut;
  cut.v = st.v;
  cut.v_anchor = st.v_anchor;

  const Point wall_b = d.b();
  const Point wall_c = d.c();
  const double wx_lo = std::min(wall_b.x, wall_c.x);
  const double wx_hi = std::max(wall_b.x, wall_c.x);

  bool wall_hit = false;
  Point w;
  if (st.x > wx_lo && st.x < wx_hi) {
    const double t = (st.x - wall_b.x) / (wall_c.x - wall_b.x);
    w = Point(st.x, wall_b.y + t * (wall_c.y - wall_b.y));
    wall_hit = true;
  }

  // Parameter of a point along the wall b -> c by the dominant axis.
  auto wall_param = [&](const Point& u) {
    const Point dw = wall_c - wall_b;
    return std::fabs(dw.x) >= std::fabs(dw.y) ? (u.x - wall_b.x) / dw.x
                                              : (u.y - wall_b.y) / dw.y;
  };

  if (st.top) {
    Point u(st.x, d.rect.ymax);
    const bool use_wall = wall_hit && w.y > st.v.y && w.y < u.y;
    if (use_wall) u = w;
    cut.u = u;
    if (use_wall) {
      const double wall_t = wall_param(u);
      if (orientation(wall_b, wall_c, st.v) > 0) {
        cut.u_anchor = {d.wall_edge_b_tilde(), wall_t};  // b_tilde -> c_tilde
      } else {
        cut.u_anchor = {d.wall_edge_b(), 1.0 - wall_t};  // c -> b
      }
      return cut;
    }
  } else {
    Point u(st.x, d.rect.ymin);
    const bool use_wall = wall_hit && w.y < st.v.y && w.y > u.y;
    if (use_wall) u = w;
    cut.u = u;
    if (use_wall) {
      const double wall_t = wall_param(u);
      if (orientation(wall_b, wall_c, st.v) > 0) {
        cut.u_anchor = {d.wall_edge_b_tilde(), wall_t};
      } else {
        cut.u_anchor = {d.wall_edge_b(), 1.0 - wall_t};
      }
      return cut;
    }
  }

  // Rectangle-side anchor: find the hosting B1 edge.
  for (std::size_t e = 1; e < d.b_pos - 1; ++e) {
    const Point& a = d.chain[e];
    const Point& b = d.chain[e + 1];
    if (on_segment(cut.u, Segment::between(a, b))) {
      const double len = std::fabs(b.x - a.x) > std::fabs(b.y - a.y)
                             ? (cut.u.x - a.x) / (b.x - a.x)
                             : (cut.u.y - a.y) / (b.y - a.y);
      cut.u_anchor = {e, len};
      return cut;
    }
  }
  throw std::logic_error("build_cut: rectangle anchor not found");
}

void assemble_pieces(const RopeDomain& d, Partition& part) {
  const std::size_t N = part.segments.size();
  part.pieces.clear();
  part.pieces.reserve(N + 1);

  const ChainAnchor b_tilde_anchor{0, 0.0};
  const ChainAnchor b_anchor{d.b_pos, 0.0};

  for (std::size_t i = 0; i <= N; ++i) {
    std::vector<Point> ring;
    PartitionPiece piece;

    const bool has_left = i > 0;
    const bool has_right = i < N;
    const CuttingSegment* left = has_left ? &part.segments[i - 1] : nullptr;
    const CuttingSegment* right = has_right ? &part.segments[i] : nullptr;

    // B1 run, u_i .. u_{i+1} (or from b_tilde / to b).
    if (has_left) {
      ring.push_back(left->u);
    } else {
      piece.left_point_vertex = 0;
      ring.push_back(d.b_tilde());
    }
    append_chain_between(ring, d, has_left ? left->u_anchor : b_tilde_anchor,
                         has_right ? right->u_anchor : b_anchor);
    if (has_right) {
      ring.push_back(right->u);
      piece.right_cut_edge = static_cast<int>(ring.size()) - 1;
      ring.push_back(right->v);
    } else {
      piece.right_point_vertex = ring.size();
      ring.push_back(d.b());
    }
    // B2 run, v_{i+1} .. v_i (or from b / to b_tilde).
    append_chain_between(ring, d, has_right ? right->v_anchor : b_anchor,
                         has_left ? left->v_anchor : b_tilde_anchor);
    if (has_left) {
      ring.push_back(left->v);
      piece.left_cut_edge = static_cast<int>(ring.size()) - 1;  // closes to ring[0] = u_i
    }

    // Drop accidental consecutive duplicates (anchors at chain vertices).
    std::vector<Point> dedup;
    for (const Point& pt : ring) {
      if (dedup.empty() || dedup.back() != pt) dedup.push_back(pt);
    }
    if (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();

    if (dedup.size() != ring.size()) {
      // Re-derive cut edge indices after deduplication.
      auto find_edge = [&](const Point& a, const Point& b) -> int {
        for (std::size_t k = 0; k < dedup.size(); ++k) {
          if (dedup[k] == a && dedup[(k + 1) % dedup.size()] == b) {
            return static_cast<int>(k);
          }
        }
        return -1;
      };
      piece.right_cut_edge = has_right ? find_edge(right->u, right->v) : -1;
      piece.left_cut_edge = has_left ? find_edge(left->v, left->u) : -1;
      if (!has_left) piece.left_point_vertex = 0;
      if (!has_right) {
        piece.right_point_vertex = kNoVertex;
        for (std::size_t k = 0; k < dedup.size(); ++k) {
          if (dedup[k] == d.b()) piece.right_point_vertex = k;
        }
      }
      if ((has_right && piece.right_cut_edge < 0) || (has_left && piece.left_cut_edge < 0)) {
        throw std::runtime_error("assemble_pieces: cut edge collapsed");
      }
    }

    piece.poly = SimplePolygon::validate(std::move(dedup));
    part.pieces.push_back(std::move(piece));
  }
}

}  // namespace

Partition make_vertical_partition(const RopeDomain& d, std::size_t n_cuts) {
  if (n_cuts < 1) {
    throw std::invalid_argument("make_vertical_partition: need at least one cut");
  }
  const MonotoneSplit split = is_x_monotone_boundary(d.polygon);
  if (!split.is_monotone) {
    throw std::invalid_argument("make_vertical_partition: polygon boundary is not x-monotone");
  }

  const std::vector<JourneyLeg> legs = journey_legs(d);
  if (legs.empty()) {
    throw std::invalid_argument("make_vertical_partition: polygon has no x-extent");
  }
  const double total = legs.back().end_d;

  // Station x-values must stay clear of every vertex x and of the wall top.
  std::vector<double> avoid;
  for (const Point& v : d.polygon.vertices()) avoid.push_back(v.x);
  avoid.push_back(d.c().x);
  std::sort(avoid.begin(), avoid.end());
  avoid.erase(std::unique(avoid.begin(), avoid.end()), avoid.end());
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < avoid.size(); ++i) {
    min_gap = std::min(min_gap, avoid[i + 1] - avoid[i]);
  }
  const double span = d.polygon.vertices().empty() ? 1.0 : total / 2.0;
  const double near_tol = 1e-9 * std::max(1.0, span);
  const double spacing = total / static_cast<double>(n_cuts + 1);
  const double nudge = std::min(0.5 * min_gap, 0.25 * spacing);

  auto x_clear = [&](double x) {
    auto it = std::lower_bound(avoid.begin(), avoid.end(), x - near_tol);
    return it == avoid.end() || *it > x + near_tol;
  };

  Partition part;
  for (std::size_t i = 1; i <= n_cuts; ++i) {
    double target = spacing * static_cast<double>(i);

    // Locate leg and x at the unrolled offset, nudging off vertex stations.
    auto locate = [&](double dd) -> std::pair<const JourneyLeg*, double> {
      for (const JourneyLeg& leg : legs) {
        if (dd >= leg.start_d && dd <= leg.end_d) {
          const double x = leg.top ? leg.edges.front().a.x - (dd - leg.start_d)
                                   : leg.edges.front().a.x + (dd - leg.start_d);
          return {&leg, x};
        }
      }
      return {nullptr, 0.0};
    };

    auto [leg, x] = locate(target);
    if (leg == nullptr) {
      throw std::logic_error("make_vertical_partition: station outside journey");
    }
    if (!x_clear(x)) {
      bool fixed = false;
      for (const double delta : {nudge, -nudge}) {
        const double t2 = target + delta;
        if (t2 <= 0.0 || t2 >= total) continue;
        auto [leg2, x2] = locate(t2);
        if (leg2 != nullptr && x_clear(x2)) {
          leg = leg2;
          x = x2;
          target = t2;
          fixed = true;
          break;
        }
      }
      if (!fixed) {
        std::ostringstream msg;
        msg << "make_vertical_partition: station at x=" << x
            << " cannot be nudged off a vertex";
        throw std::runtime_error(msg.str());
      }
    }

    // Hosting polygon edge within the leg.
    const JourneyLeg::Edge* host = nullptr;
    for (const JourneyLeg::Edge& e : leg->edges) {
      const double lo = std::min(e.a.x, e.b.x);
      const double hi = std::max(e.a.x, e.b.x);
      if (x > lo && x < hi) {
        host = &e;
        break;
      }
    }
    if (host == nullptr) {
      throw std::logic_error("make_vertical_partition: station edge not found");
    }

    StationCut st;
    st.x = x;
    st.top = leg->top;
    const double tp = (x - host->a.x) / (host->b.x - host->a.x);
    st.v = Point(x, host->a.y + tp * (host->b.y - host->a.y));
    const std::size_t chain_edge = chain_edge_of_polygon_edge(d, host->p_edge);
    // The chain edge runs opposite to the ccw polygon edge.
    st.v_anchor = {chain_edge, 1.0 - tp};

    CuttingSegment cut = build_cut(d, st);
    cut.index = i;
    part.segments.push_back(cut);
  }

  // Anchor order sanity: u ascending along B1, v descending along B2 storage.
  for (std::size_t i = 0; i + 1 < part.segments.size(); ++i) {
    if (!(part.segments[i].u_anchor.key() < part.segments[i + 1].u_anchor.key()) ||
        !(part.segments[i].v_anchor.key() > part.segments[i + 1].v_anchor.key())) {
      throw std::logic_error("make_vertical_partition: cut anchors out of order");
    }
  }

  assemble_pieces(d, part);

  const PartitionReport report = verify_partition(d, part);
  if (!report.ok()) {
    throw std::runtime_error("make_vertical_partition: decomposition conditions failed: " +
                             report.detail);
  }
  return part;
}

Partition make_partition_from_cuts(const RopeDomain& d, const std::vector<Segment>& cuts) {
  const double tol = 1e-9 * d.diagonal();
  const std::size_t m = d.chain.size();

  auto anchor_of = [&](const Point& p) -> std::optional<ChainAnchor> {
    for (std::size_t e = 0; e < m; ++e) {
      const Point& a = d.chain[e];
      const Point& b = d.chain[(e + 1) % m];
      if (a == b) continue;
      const Segment seg = Segment::between(a, b);
      if (point_segment_distance(p, seg) <= tol) {
        const Point dvec = b - a;
        double t = dot(p - a, dvec) / norm_sq(dvec);
        t = std::clamp(t, 0.0, 1.0);
        if (t >= 1.0) continue;  // belongs to the next edge as t == 0
        return ChainAnchor{e, t};
      }
    }
    return std::nullopt;
  };

  Partition part;
  for (const Segment& s : cuts) {
    CuttingSegment cut;
    auto ap = anchor_of(s.p);
    auto aq = anchor_of(s.q);
    if (!ap || !aq) {
      throw std::invalid_argument("make_partition_from_cuts: cut endpoint is not on the boundary");
    }
    const bool p_on_b1 = ap->edge < d.b_pos;
    if (p_on_b1) {
      cut.u = s.p;
      cut.u_anchor = *ap;
      cut.v = s.q;
      cut.v_anchor = *aq;
    } else {
      cut.u = s.q;
      cut.u_anchor = *aq;
      cut.v = s.p;
      cut.v_anchor = *ap;
    }
    part.segments.push_back(cut);
  }

  // Order along the journey: v anchors descending in chain storage.
  std::sort(part.segments.begin(), part.segments.end(),
            [](const CuttingSegment& a, const CuttingSegment& b) {
              return a.v_anchor.key() > b.v_anchor.key();
            });
  for (std::size_t i = 0; i < part.segments.size(); ++i) {
    part.segments[i].index = i + 1;
  }

  try {
    assemble_pieces(d, part);
  } catch (const std::exception&) {
    part.pieces.clear();  // verify_partition will report the failure
  }
  return part;
}

namespace {

void clip_halfplane(const std::vector<Point>& subject, const Point& a, const Point& b,
                    std::vector<Point>& out) {
  out.clear();
  const std::size_t n = subject.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& cur = subject[i];
    const Point& nxt = subject[(i + 1) % n];
    const double dc = cross(b - a, cur - a);
    const double dn = cross(b - a, nxt - a);
    if (dc >= 0.0) out.push_back(cur);
    if ((dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0)) {
      const double t = dc / (dc - dn);
      out.push_back(Point(cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)));
    }
  }
}

double tri_tri_overlap_area(const Point& a0, const Point& a1, const Point& a2,
                            const Point& b0, const Point& b1, const Point& b2) {
  std::vector<Point> poly{a0, a1, a2};
  std::vector<Point> scratch;
  const Point clip[3] = {b0, b1, b2};
  for (int e = 0; e < 3; ++e) {
    clip_halfplane(poly, clip[e], clip[(e + 1) % 3], scratch);
    poly.swap(scratch);
    if (poly.size() < 3) return 0.0;
  }
  return std::fabs(signed_area(poly));
}

struct BBox {
  double xlo = 0, ylo = 0, xhi = 0, yhi = 0;
  static BBox of(const std::vector<Point>& pts) {
    BBox b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const Point& p : pts) {
      b.xlo = std::min(b.xlo, p.x);
      b.ylo = std::min(b.ylo, p.y);
      b.xhi = std::max(b.xhi, p.x);
      b.yhi = std::max(b.yhi, p.y);
    }
    return b;
  }
  bool overlaps(const BBox& o) const {
    return xlo <= o.xhi && o.xlo <= xhi && ylo <= o.yhi && o.ylo <= yhi;
  }
};

}  // namespace

PartitionReport verify_partition(const RopeDomain& d, const Partition& part) {
  PartitionReport rep;
  std::ostringstream detail;
  const double tol = 1e-9 * d.diagonal();
  const std::size_t m = d.chain.size();

  // 1. Endpoint chains and open-interior containment.
  rep.endpoints_and_interior = true;
  for (const CuttingSegment& cut : part.segments) {
    if (!(cut.u_anchor.edge < d.b_pos)) {
      rep.endpoints_and_interior = false;
      detail << "cut " << cut.index << ": u is not on B1; ";
      continue;
    }
    if (!(cut.v_anchor.edge >= d.b_pos && cut.v_anchor.edge < m)) {
      rep.endpoints_and_interior = false;
      detail << "cut " << cut.index << ": v is not on B2; ";
      continue;
    }
    if (distance(anchor_point(d, cut.u_anchor), cut.u) > tol ||
        distance(anchor_point(d, cut.v_anchor), cut.v) > tol) {
      rep.endpoints_and_interior = false;
      detail << "cut " << cut.index << ": anchors drifted; ";
      continue;
    }
    const Segment seg = cut.segment();
    for (std::size_t e = 0; e < m; ++e) {
      const SegmentIntersection isect = segment_intersection(seg, d.edge(e));
      if (isect.kind == IntersectKind::none) continue;
      if (isect.kind == IntersectKind::overlap ||
          (distance(isect.point, cut.u) > tol && distance(isect.point, cut.v) > tol)) {
        rep.endpoints_and_interior = false;
        detail << "cut " << cut.index << ": open segment leaves int D; ";
        break;
      }
    }
    const Point mid = seg.at(0.5);
    if (d.locate(mid) != PointLocation::interior) {
      rep.endpoints_and_interior = false;
      detail << "cut " << cut.index << ": midpoint not interior; ";
    }
  }

  // 2. Strict separation of b_tilde and b, by two-colouring the boundary at
  // the cut anchors.
  rep.separation = true;
  const double b_tilde_key = 0.0;
  const double b_key = static_cast<double>(d.b_pos);
  for (const CuttingSegment& cut : part.segments) {
    const double ku = cut.u_anchor.key();
    const double kv = cut.v_anchor.key();
    auto strictly_inside_arc = [&](double pos, double from, double to) {
      // Arc walking forward (cyclically) from `from` to `to`.
      const double len = std::fmod(to - from + static_cast<double>(m), static_cast<double>(m));
      const double off = std::fmod(pos - from + static_cast<double>(m), static_cast<double>(m));
      return off > 0.0 && off < len;
    };
    const bool tilde_first = strictly_inside_arc(b_tilde_key, ku, kv);
    const bool b_first = strictly_inside_arc(b_key, ku, kv);
    if (tilde_first == b_first) {
      rep.separation = false;
      detail << "cut " << cut.index << ": does not separate b_tilde from b; ";
    }
  }

  // 3. Pairwise disjoint cuts.
  rep.pairwise_disjoint = true;
  for (std::size_t i = 0; i < part.segments.size(); ++i) {
    for (std::size_t j = i + 1; j < part.segments.size(); ++j) {
      if (segment_intersection(part.segments[i].segment(), part.segments[j].segment()).kind !=
          IntersectKind::none) {
        rep.pairwise_disjoint = false;
        detail << "cuts " << part.segments[i].index << " and " << part.segments[j].index
               << " intersect; ";
      }
    }
  }

  // 4/5. Coverage and interior disjointness need assembled pieces.
  if (part.pieces.size() != part.segments.size() + 1) {
    rep.coverage = false;
    rep.interior_disjoint = false;
    detail << "pieces unavailable; ";
    rep.detail = detail.str();
    return rep;
  }

  const double domain_area = signed_area(d.chain);
  double sum = 0.0;
  for (const PartitionPiece& piece : part.pieces) sum += piece.poly.area();
  rep.coverage = std::fabs(sum - domain_area) <= 1e-9 * domain_area;
  if (!rep.coverage) {
    detail << "areas sum to " << sum << " vs " << domain_area << "; ";
  }

  rep.interior_disjoint = true;
  std::vector<Triangulation> meshes;
  std::vector<BBox> boxes;
  meshes.reserve(part.pieces.size());
  for (const PartitionPiece& piece : part.pieces) {
    meshes.push_back(Triangulation::from_polygon(piece.poly));
    boxes.push_back(BBox::of(piece.poly.vertices()));
  }
  const double area_tol = 1e-9 * domain_area;
  for (std::size_t i = 0; i < meshes.size() && rep.interior_disjoint; ++i) {
    for (std::size_t j = i + 1; j < meshes.size(); ++j) {
      if (!boxes[i].overlaps(boxes[j])) continue;
      double overlap = 0.0;
      for (const auto& ta : meshes[i].triangles()) {
        for (const auto& tb : meshes[j].triangles()) {
          overlap += tri_tri_overlap_area(
              meshes[i].points()[ta.v[0]], meshes[i].points()[ta.v[1]],
              meshes[i].points()[ta.v[2]], meshes[j].points()[tb.v[0]],
              meshes[j].points()[tb.v[1]], meshes[j].points()[tb.v[2]]);
        }
      }
      if (overlap > area_tol) {
        rep.interior_disjoint = false;
        detail << "pieces " << i << " and " << j << " overlap by " << overlap << "; ";
        break;
      }
    }
  }

  rep.detail = detail.str();
  return rep;
}

}  // namespace rope
