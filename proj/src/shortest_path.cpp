#include "rope/shortest_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

namespace rope {

namespace {

// d strictly enters the open wedge at corner c of ccw triangle (c, after, before)?
// after/before are the corner's two neighbours in ccw order. base is the
// point whose position coincides with c and whose incident edge ends at tip.
bool stabs_corner_wedge(const Point& corner, const Point& after, const Point& before,
                        const Point& tip) {
  return orientation(corner, after, tip) > 0 && orientation(corner, tip, before) > 0;
}

}  // namespace

Triangulation Triangulation::from_polygon(const SimplePolygon& poly) {
  const std::vector<Point>& v = poly.vertices();
  const std::size_t n = v.size();

  std::vector<std::size_t> nxt(n), prv(n);
  for (std::size_t i = 0; i < n; ++i) {
    nxt[i] = (i + 1) % n;
    prv[i] = (i + n - 1) % n;
  }
  std::vector<bool> alive(n, true);

  Triangulation mesh;
  mesh.pts_ = v;

  auto is_ear = [&](std::size_t b) {
    const std::size_t a = prv[b], c = nxt[b];
    if (orientation(v[a], v[b], v[c]) <= 0) return false;
    for (std::size_t w = 0; w < n; ++w) {
      if (!alive[w] || w == a || w == b || w == c) continue;
      const int o1 = orientation(v[a], v[b], v[w]);
      const int o2 = orientation(v[b], v[c], v[w]);
      const int o3 = orientation(v[c], v[a], v[w]);
      if (o1 > 0 && o2 > 0 && o3 > 0) return false;  // strictly inside
      if (o1 < 0 || o2 < 0 || o3 < 0) continue;      // strictly outside
      // On the triangle boundary. A vertex whose position coincides with a
      // corner (a cut-wall twin) only blocks the ear if one of its incident
      // edges stabs into the triangle.
      std::size_t corner = kNoVertex;
      if (v[w] == v[a]) corner = a;
      else if (v[w] == v[b]) corner = b;
      else if (v[w] == v[c]) corner = c;
      if (corner == kNoVertex) return false;  // interior of an edge
      const Point& after = corner == a ? v[b] : (corner == b ? v[c] : v[a]);
      const Point& before = corner == a ? v[c] : (corner == b ? v[a] : v[b]);
      if (stabs_corner_wedge(v[corner], after, before, v[prv[w]])) return false;
      if (stabs_corner_wedge(v[corner], after, before, v[nxt[w]])) return false;
    }
    return true;
  };

  std::size_t remaining = n;
  std::size_t cur = 0;
  std::size_t stall = 0;
  while (remaining > 3) {
    if (!alive[cur]) {
      cur = nxt[cur];
      continue;
    }
    if (is_ear(cur)) {
      const std::size_t a = prv[cur], c = nxt[cur];
      mesh.tris_.push_back({{a, cur, c}, {-1, -1, -1}});
      alive[cur] = false;
      nxt[a] = c;
      prv[c] = a;
      --remaining;
      cur = a;
      stall = 0;
    } else {
      cur = nxt[cur];
      if (++stall > remaining + 1) {
        throw std::runtime_error("triangulate: no ear found");
      }
    }
  }
  // Final triangle.
  std::size_t a = 0;
  while (!alive[a]) ++a;
  const std::size_t b = nxt[a], c = nxt[b];
  if (orientation(v[a], v[b], v[c]) <= 0) {
    throw std::runtime_error("triangulate: degenerate final triangle");
  }
  mesh.tris_.push_back({{a, b, c}, {-1, -1, -1}});
  mesh.build_adjacency();
  return mesh;
}

void Triangulation::build_adjacency() {
  std::map<std::pair<std::size_t, std::size_t>, std::pair<int, int>> half;
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    for (int e = 0; e < 3; ++e) {
      tris_[t].nbr[e] = -1;
      const std::size_t u = tris_[t].v[e];
      const std::size_t w = tris_[t].v[(e + 1) % 3];
      half[{std::min(u, w), std::max(u, w)}] = {-1, -1};
    }
  }
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    for (int e = 0; e < 3; ++e) {
      const std::size_t u = tris_[t].v[e];
      const std::size_t w = tris_[t].v[(e + 1) % 3];
      auto& slot = half[{std::min(u, w), std::max(u, w)}];
      if (slot.first < 0) {
        slot = {static_cast<int>(t), e};
      } else {
        tris_[t].nbr[e] = slot.first;
        tris_[slot.first].nbr[slot.second] = static_cast<int>(t);
      }
    }
  }
}

Triangulation Triangulation::glue(const Triangulation& a, std::size_t au, std::size_t av,
                                  const Triangulation& b, std::size_t bu, std::size_t bv,
                                  std::vector<std::size_t>* b_remap) {
  const int ta = a.triangle_with_boundary_edge(au, av);
  const int tb = b.triangle_with_boundary_edge(bu, bv);
  if (ta < 0 || tb < 0) {
    throw std::invalid_argument("glue: shared edge is not a boundary edge of both meshes");
  }

  Triangulation out;
  out.pts_ = a.pts_;
  std::vector<std::size_t> remap(b.pts_.size());
  for (std::size_t i = 0; i < b.pts_.size(); ++i) {
    if (i == bu) {
      remap[i] = au;
    } else if (i == bv) {
      remap[i] = av;
    } else {
      remap[i] = out.pts_.size();
      out.pts_.push_back(b.pts_[i]);
    }
  }

  out.tris_ = a.tris_;
  const int shift = static_cast<int>(a.tris_.size());
  out.glue_offset_ = a.tris_.size();
  for (const Tri& t : b.tris_) {
    Tri nt = t;
    for (int e = 0; e < 3; ++e) {
      nt.v[e] = remap[t.v[e]];
      nt.nbr[e] = t.nbr[e] < 0 ? -1 : t.nbr[e] + shift;
    }
    out.tris_.push_back(nt);
  }

  // Cross-link the identified edge.
  auto link = [&](int t, std::size_t u, std::size_t w, int other) {
    for (int e = 0; e < 3; ++e) {
      const std::size_t p = out.tris_[t].v[e];
      const std::size_t q = out.tris_[t].v[(e + 1) % 3];
      if ((p == u && q == w) || (p == w && q == u)) {
        out.tris_[t].nbr[e] = other;
        return;
      }
    }
    throw std::logic_error("glue: edge vanished");
  };
  link(ta, au, av, tb + shift);
  link(tb + shift, au, av, ta);
  if (b_remap != nullptr) *b_remap = remap;
  return out;
}

double Triangulation::area() const {
  double total = 0.0;
  for (const Tri& t : tris_) {
    const Point& a = pts_[t.v[0]];
    const Point& b = pts_[t.v[1]];
    const Point& c = pts_[t.v[2]];
    total += 0.5 * cross(b - a, c - a);
  }
  return total;
}

int Triangulation::locate(const Point& p, std::size_t lo, std::size_t hi) const {
  if (hi == kNoVertex) hi = tris_.size();
  for (std::size_t t = lo; t < hi; ++t) {
    const Tri& tr = tris_[t];
    if (orientation(pts_[tr.v[0]], pts_[tr.v[1]], p) >= 0 &&
        orientation(pts_[tr.v[1]], pts_[tr.v[2]], p) >= 0 &&
        orientation(pts_[tr.v[2]], pts_[tr.v[0]], p) >= 0) {
      return static_cast<int>(t);
    }
  }
  return -1;
}

int Triangulation::triangle_with_boundary_edge(std::size_t u, std::size_t v) const {
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    for (int e = 0; e < 3; ++e) {
      if (tris_[t].nbr[e] >= 0) continue;
      const std::size_t p = tris_[t].v[e];
      const std::size_t q = tris_[t].v[(e + 1) % 3];
      if ((p == u && q == v) || (p == v && q == u)) return static_cast<int>(t);
    }
  }
  return -1;
}

int Triangulation::triangle_of_vertex(std::size_t vid) const {
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    if (tris_[t].v[0] == vid || tris_[t].v[1] == vid || tris_[t].v[2] == vid) {
      return static_cast<int>(t);
    }
  }
  return -1;
}

namespace {

struct PortalPoint {
  Point p;
  std::size_t vid = kNoVertex;
};

}  // namespace

Triangulation::PathResult Triangulation::geodesic(const Point& x, int tri_x,
                                                  const Point& y, int tri_y) const {
  if (tri_x < 0 || tri_y < 0) {
    throw std::invalid_argument("geodesic: endpoints not located in the mesh");
  }

  PathResult out;
  if (x == y) {
    out.path = Polyline({x});
    return out;
  }
  if (tri_x == tri_y) {
    out.path = Polyline({x, y});
    return out;
  }

  // Sleeve through the dual tree.
  std::vector<int> parent(tris_.size(), -2);
  std::queue<int> bfs;
  bfs.push(tri_x);
  parent[tri_x] = -1;
  while (!bfs.empty()) {
    const int t = bfs.front();
    bfs.pop();
    if (t == tri_y) break;
    for (int e = 0; e < 3; ++e) {
      const int nb = tris_[t].nbr[e];
      if (nb >= 0 && parent[nb] == -2) {
        parent[nb] = t;
        bfs.push(nb);
      }
    }
  }
  if (parent[tri_y] == -2) {
    throw std::logic_error("geodesic: mesh is disconnected");
  }
  std::vector<int> sleeve;
  for (int t = tri_y; t != -1; t = parent[t]) sleeve.push_back(t);
  std::reverse(sleeve.begin(), sleeve.end());

  // Portals oriented along travel: crossing directed edge (p, q) of the
  // current ccw triangle puts q on the left, p on the right.
  std::vector<std::pair<PortalPoint, PortalPoint>> portals;
  portals.push_back({{x, kNoVertex}, {x, kNoVertex}});
  for (std::size_t i = 0; i + 1 < sleeve.size(); ++i) {
    const Tri& t = tris_[sleeve[i]];
    int e = 0;
    while (e < 3 && t.nbr[e] != sleeve[i + 1]) ++e;
    if (e == 3) throw std::logic_error("geodesic: broken sleeve");
    const std::size_t pe = t.v[e];
    const std::size_t qe = t.v[(e + 1) % 3];
    portals.push_back({{pts_[qe], qe}, {pts_[pe], pe}});
  }
  portals.push_back({{y, kNoVertex}, {y, kNoVertex}});

  // Funnel with exact orientation tests. Collinear cases are resolved
  // against the ray, not the line: -1 right, +1 left, 0 on the ray, 2 on
  // the opposite ray (behind the apex).
  auto ray_side = [](const Point& apex, const Point& tip, const Point& q) -> int {
    const int o = orientation(apex, tip, q);
    if (o != 0) return o;
    return dot(tip - apex, q - apex) >= 0.0 ? 0 : 2;
  };

  std::vector<PortalPoint> emitted;
  Point apex = x;
  std::size_t apex_idx = 0;
  PortalPoint pl{x, kNoVertex}, pr{x, kNoVertex};
  std::size_t li = 0, ri = 0;

  for (std::size_t i = 1; i < portals.size(); ++i) {
    const PortalPoint& L = portals[i].first;
    const PortalPoint& R = portals[i].second;

    if (R.p == apex) {  // portal endpoint at the apex resets that side
      pr = R;
      ri = i;
    } else {
      const int s = apex == pr.p ? 0 : ray_side(apex, pr.p, R.p);
      if (s == 0 || s == 1) {  // narrows the funnel from the right
        const int sl = apex == pl.p ? 2 : ray_side(apex, pl.p, R.p);
        if (sl == -1 || sl == 2) {
          pr = R;
          ri = i;
        } else {  // right crossed over the left boundary
          emitted.push_back(pl);
          apex = pl.p;
          apex_idx = li;
          pl = {apex, kNoVertex};
          pr = {apex, kNoVertex};
          ri = apex_idx;
          i = apex_idx;
          continue;
        }
      }
    }
    if (L.p == apex) {
      pl = L;
      li = i;
    } else {
      const int s = apex == pl.p ? 0 : ray_side(apex, pl.p, L.p);
      if (s == 0 || s == -1) {  // narrows the funnel from the left
        const int sr = apex == pr.p ? 2 : ray_side(apex, pr.p, L.p);
        if (sr == 1 || sr == 2) {
          pl = L;
          li = i;
        } else {
          emitted.push_back(pr);
          apex = pr.p;
          apex_idx = ri;
          pl = {apex, kNoVertex};
          pr = {apex, kNoVertex};
          li = apex_idx;
          i = apex_idx;
          continue;
        }
      }
    }
  }

  std::vector<Point> path_pts;
  std::vector<std::size_t> turns;
  path_pts.push_back(x);
  for (const PortalPoint& pp : emitted) {
    if (pp.p == path_pts.back()) continue;
    path_pts.push_back(pp.p);
    turns.push_back(pp.vid);
  }
  if (path_pts.back() != y) path_pts.push_back(y);

  // Drop exactly-collinear pass-through vertices.
  std::vector<Point> clean;
  std::vector<std::size_t> clean_turns;
  clean.push_back(path_pts[0]);
  for (std::size_t i = 1; i + 1 < path_pts.size(); ++i) {
    const Point& prev = clean.back();
    const Point& cur = path_pts[i];
    const Point& next = path_pts[i + 1];
    if (orientation(prev, cur, next) == 0 && dot(prev - cur, next - cur) < 0.0) {
      continue;
    }
    clean.push_back(cur);
    clean_turns.push_back(turns[i - 1]);
  }
  if (path_pts.size() > 1) clean.push_back(path_pts.back());

  out.path = Polyline(std::move(clean));
  out.turn_vertices = std::move(clean_turns);
  return out;
}

Triangulation triangulate(const SimplePolygon& p) {
  return Triangulation::from_polygon(p);
}

GeodesicPath shortest_path(const SimplePolygon& p, const Point& x, const Point& y) {
  if (p.locate(x) == PointLocation::exterior) {
    throw std::invalid_argument("shortest_path: start point outside polygon");
  }
  if (p.locate(y) == PointLocation::exterior) {
    throw std::invalid_argument("shortest_path: goal point outside polygon");
  }
  const Triangulation mesh = Triangulation::from_polygon(p);
  const int tx = mesh.locate(x);
  const int ty = mesh.locate(y);
  Triangulation::PathResult r = mesh.geodesic(x, tx, y, ty);
  GeodesicPath g;
  g.path = std::move(r.path);
  g.interior_vertex_indices = std::move(r.turn_vertices);
  return g;
}

// ---------------------------------------------------------------------------
// Visibility-graph oracle
// ---------------------------------------------------------------------------

namespace {

// Closed interior cone test at ring vertex vid: is the direction toward
// `to` locally inside the region? Exact.
bool direction_in_interior_cone(const std::vector<Point>& ring, std::size_t vid,
                                const Point& to) {
  const std::size_t n = ring.size();
  const Point& v = ring[vid];
  const Point& nx = ring[(vid + 1) % n];
  const Point& pv = ring[(vid + n - 1) % n];

  const int c_ad = orientation(v, nx, to);   // cross(next-v, to-v)
  const int c_bd = orientation(v, pv, to);   // cross(prev-v, to-v)
  const int c_ab = orientation(v, nx, pv);   // cone opening

  if (c_ab > 0) {  // convex corner, span < pi
    if (c_ad > 0 && c_bd < 0) return true;
    if (c_ad == 0) return dot(nx - v, to - v) > 0.0;
    if (c_bd == 0) return dot(pv - v, to - v) > 0.0;
    return false;
  }
  if (c_ab < 0) {  // reflex corner, span > pi
    const bool strictly_outside = (c_ad < 0 && c_bd > 0);
    return !strictly_outside;
  }
  // Flat vertex: interior is the closed left half-plane of the outgoing edge.
  return c_ad >= 0;
}

struct VgNode {
  Point p;
  std::size_t vid;  // kNoVertex for free endpoints
};

// Full visibility test of the segment between two nodes against the ring.
bool segment_admissible(const std::vector<Point>& ring, const VgNode& a, const VgNode& b,
                        const std::vector<bool>& overlap_blocked) {
  if (a.p == b.p) return false;
  const std::size_t n = ring.size();
  const Segment seg = Segment::between(a.p, b.p);
  const Point d = b.p - a.p;
  const double len_sq = norm_sq(d);

  const double lox = std::min(a.p.x, b.p.x), hix = std::max(a.p.x, b.p.x);
  const double loy = std::min(a.p.y, b.p.y), hiy = std::max(a.p.y, b.p.y);

  // Pass-through of any ring vertex position is not direct visibility; the
  // graph routes through that vertex instead.
  for (std::size_t w = 0; w < n; ++w) {
    const Point& pw = ring[w];
    if (pw == a.p || pw == b.p) continue;
    if (pw.x < lox || pw.x > hix || pw.y < loy || pw.y > hiy) continue;
    if (on_segment(pw, seg)) return false;
  }

  if (a.vid != kNoVertex && !direction_in_interior_cone(ring, a.vid, b.p)) return false;
  if (b.vid != kNoVertex && !direction_in_interior_cone(ring, b.vid, a.p)) return false;

  std::vector<double> touch{0.0, 1.0};
  for (std::size_t e = 0; e < n; ++e) {
    const Point& ep = ring[e];
    const Point& eq = ring[(e + 1) % n];
    if (std::max(ep.x, eq.x) < lox || std::min(ep.x, eq.x) > hix ||
        std::max(ep.y, eq.y) < loy || std::min(ep.y, eq.y) > hiy) {
      continue;
    }
    const int o1 = orientation(a.p, b.p, ep);
    const int o2 = orientation(a.p, b.p, eq);
    if (o1 == 0 && o2 == 0) {
      // Collinear: riding along an ordinary edge is allowed, riding a cut
      // wall is not.
      const SegmentIntersection isect =
          segment_intersection(seg, Segment::between(ep, eq));
      if (isect.kind == IntersectKind::overlap) {
        if (overlap_blocked[e]) return false;
        touch.push_back(dot(isect.overlap_p - a.p, d) / len_sq);
        touch.push_back(dot(isect.overlap_q - a.p, d) / len_sq);
      } else if (isect.kind == IntersectKind::point) {
        touch.push_back(dot(isect.point - a.p, d) / len_sq);
      }
      continue;
    }
    const int o3 = orientation(ep, eq, a.p);
    const int o4 = orientation(ep, eq, b.p);
    if (o1 * o2 < 0 && o3 * o4 < 0) return false;  // proper crossing
    if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) {
      const SegmentIntersection isect =
          segment_intersection(seg, Segment::between(ep, eq));
      if (isect.kind == IntersectKind::point) {
        touch.push_back(dot(isect.point - a.p, d) / len_sq);
      }
    }
  }

  std::sort(touch.begin(), touch.end());
  for (std::size_t i = 0; i + 1 < touch.size(); ++i) {
    const double t0 = std::max(0.0, touch[i]);
    const double t1 = std::min(1.0, touch[i + 1]);
    if (t1 - t0 <= 1e-12) continue;
    const Point mid = seg.at(0.5 * (t0 + t1));
    if (locate_in_ring(ring, mid) == PointLocation::exterior) return false;
  }
  return true;
}

GeodesicPath vg_core(const std::vector<Point>& ring, std::vector<VgNode> nodes,
                     const std::vector<std::size_t>& overlap_blocked_edges) {
  const std::size_t n = ring.size();
  std::vector<bool> blocked(n, false);
  for (std::size_t e : overlap_blocked_edges) blocked[e] = true;

  // nodes[0] = start, nodes[1] = goal; reflex ring vertices follow.
  for (std::size_t w = 0; w < n; ++w) {
    const std::size_t pv = (w + n - 1) % n;
    const std::size_t nx = (w + 1) % n;
    if (orientation(ring[pv], ring[w], ring[nx]) < 0) {
      if ((nodes[0].vid == w) || (nodes[1].vid == w)) continue;
      nodes.push_back({ring[w], w});
    }
  }

  const std::size_t m = nodes.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (segment_admissible(ring, nodes[i], nodes[j], blocked)) {
        const double wgt = distance(nodes[i].p, nodes[j].p);
        adj[i].push_back({j, wgt});
        adj[j].push_back({i, wgt});
      }
    }
  }

  std::vector<double> dist(m, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> from(m, kNoVertex);
  using QE = std::pair<double, std::size_t>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  dist[0] = 0.0;
  pq.push({0.0, 0});
  while (!pq.empty()) {
    const auto [dcur, u] = pq.top();
    pq.pop();
    if (dcur > dist[u]) continue;
    if (u == 1) break;
    for (const auto& [w, wd] : adj[u]) {
      if (dist[u] + wd < dist[w]) {
        dist[w] = dist[u] + wd;
        from[w] = u;
        pq.push({dist[w], w});
      }
    }
  }
  if (!std::isfinite(dist[1])) {
    throw std::runtime_error("vg_shortest_path: endpoints are not connected");
  }

  std::vector<std::size_t> order;
  for (std::size_t u = 1; u != kNoVertex; u = from[u]) order.push_back(u);
  std::reverse(order.begin(), order.end());

  GeodesicPath g;
  std::vector<Point> pts;
  for (std::size_t k = 0; k < order.size(); ++k) {
    pts.push_back(nodes[order[k]].p);
    if (k != 0 && k + 1 != order.size()) {
      g.interior_vertex_indices.push_back(nodes[order[k]].vid);
    }
  }
  g.path = Polyline(std::move(pts));
  drop_collinear_vertices(g);
  return g;
}

}  // namespace

GeodesicPath vg_shortest_path(const SimplePolygon& p, const Point& x, const Point& y) {
  if (p.locate(x) == PointLocation::exterior) {
    throw std::invalid_argument("vg_shortest_path: start point outside polygon");
  }
  if (p.locate(y) == PointLocation::exterior) {
    throw std::invalid_argument("vg_shortest_path: goal point outside polygon");
  }
  if (x == y) {
    GeodesicPath g;
    g.path = Polyline({x});
    return g;
  }
  std::vector<VgNode> nodes{{x, kNoVertex}, {y, kNoVertex}};
  return vg_core(p.vertices(), std::move(nodes), {});
}

GeodesicPath vg_shortest_path_on_chain(const std::vector<Point>& ring,
                                       std::size_t start_vid, std::size_t goal_vid,
                                       const std::vector<std::size_t>& overlap_blocked_edges) {
  if (start_vid >= ring.size() || goal_vid >= ring.size() || start_vid == goal_vid) {
    throw std::invalid_argument("vg_shortest_path_on_chain: bad endpoint ids");
  }
  std::vector<VgNode> nodes{{ring[start_vid], start_vid}, {ring[goal_vid], goal_vid}};
  return vg_core(ring, std::move(nodes), overlap_blocked_edges);
}

std::optional<Point> first_interior_vertex(const GeodesicPath& g, bool from_start) {
  if (g.path.size() < 3) return std::nullopt;
  return from_start ? g.path.vertices[1] : g.path.vertices[g.path.size() - 2];
}

void drop_collinear_vertices(GeodesicPath& g) {
  if (g.path.size() < 3) return;
  std::vector<Point> pts;
  std::vector<std::size_t> ids;
  pts.push_back(g.path.vertices.front());
  for (std::size_t i = 1; i + 1 < g.path.size(); ++i) {
    const Point& prev = pts.back();
    const Point& cur = g.path.vertices[i];
    const Point& next = g.path.vertices[i + 1];
    if (orientation(prev, cur, next) == 0 && dot(prev - cur, next - cur) < 0.0) {
      continue;
    }
    pts.push_back(cur);
    ids.push_back(g.interior_vertex_indices[i - 1]);
  }
  pts.push_back(g.path.vertices.back());
  g.path = Polyline(std::move(pts));
  g.interior_vertex_indices = std::move(ids);
}

}  // namespace rope
