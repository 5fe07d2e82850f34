#include "rope/solver.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rope {

namespace {

__float128 quad_length(const Polyline& p) {
  __float128 total = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const __float128 dx = p.vertices[i + 1].x - p.vertices[i].x;
    const __float128 dy = p.vertices[i + 1].y - p.vertices[i].y;
    total += sqrtq(dx * dx + dy * dy);
  }
  return total;
}

}  // namespace

double cut_parameter(const CuttingSegment& cut, const Point& p) {
  const Point d = cut.u - cut.v;
  const double s = dot(p - cut.v, d) / norm_sq(d);
  return std::clamp(s, 0.0, 1.0);
}

MmsContext::MmsContext(const RopeDomain& d, const Partition& part)
    : domain_(&d), partition_(&part) {
  const std::size_t N = part.segments.size();
  if (part.pieces.size() != N + 1) {
    throw std::invalid_argument("MmsContext: partition has no assembled pieces");
  }
  piece_mesh_.reserve(N + 1);
  for (const PartitionPiece& piece : part.pieces) {
    piece_mesh_.push_back(Triangulation::from_polygon(piece.poly));
  }
  cut_ids_.resize(N);
  union_mesh_.reserve(N);
  union_remap_.resize(N);
  for (std::size_t i = 1; i <= N; ++i) {
    const PartitionPiece& prev = part.pieces[i - 1];
    const PartitionPiece& next = part.pieces[i];
    const std::size_t mp = prev.poly.size();
    const std::size_t mn = next.poly.size();
    CutIds ids;
    ids.u_in_prev = static_cast<std::size_t>(prev.right_cut_edge);
    ids.v_in_prev = (ids.u_in_prev + 1) % mp;
    ids.v_in_next = static_cast<std::size_t>(next.left_cut_edge);
    ids.u_in_next = (ids.v_in_next + 1) % mn;
    cut_ids_[i - 1] = ids;
    union_mesh_.push_back(Triangulation::glue(piece_mesh_[i - 1], ids.u_in_prev, ids.v_in_prev,
                                              piece_mesh_[i], ids.u_in_next, ids.v_in_next,
                                              &union_remap_[i - 1]));
  }
}

ShootingState MmsContext::initial_state() const {
  ShootingState st;
  st.a.push_back(domain_->b_tilde());
  for (const CuttingSegment& cut : partition_->segments) {
    st.a.push_back(cut.v);
    st.s.push_back(0.0);
  }
  st.a.push_back(domain_->b());
  return st;
}

Triangulation::PathResult MmsContext::piece_path(const ShootingState& st, std::size_t i) const {
  const std::size_t N = cut_count();
  if (i > N) throw std::out_of_range("piece_path: piece index");
  const Triangulation& mesh = piece_mesh_[i];
  const PartitionPiece& piece = partition_->pieces[i];

  int tri_left;
  if (i == 0) {
    tri_left = mesh.triangle_of_vertex(piece.left_point_vertex);
  } else {
    const CutIds& ids = cut_ids_[i - 1];
    tri_left = mesh.triangle_with_boundary_edge(ids.v_in_next, ids.u_in_next);
  }
  int tri_right;
  if (i == N) {
    tri_right = mesh.triangle_of_vertex(piece.right_point_vertex);
  } else {
    const CutIds& ids = cut_ids_[i];
    tri_right = mesh.triangle_with_boundary_edge(ids.u_in_prev, ids.v_in_prev);
  }
  return mesh.geodesic(st.a[i], tri_left, st.a[i + 1], tri_right);
}

double MmsContext::upper_angle_at(const ShootingState& st, std::size_t i) const {
  if (i < 1 || i > cut_count()) throw std::out_of_range("upper_angle_at: cut index");
  const Triangulation::PathResult before = piece_path(st, i - 1);
  const Triangulation::PathResult after = piece_path(st, i);
  if (before.path.size() < 2 || after.path.size() < 2) {
    throw std::runtime_error("upper_angle_at: degenerate adjacent path piece");
  }
  const Point& prev_nb = before.path.vertices[before.path.size() - 2];
  const Point& next_nb = after.path.vertices[1];
  return angle_at(prev_nb, st.a[i], next_nb, partition_->segments[i - 1].u);
}

bool MmsContext::collinear_condition_holds(const ShootingState& st, std::size_t i,
                                           double tol) const {
  const double angle = upper_angle_at(st, i);
  const bool interior = st.s[i - 1] > 0.0;
  return interior ? std::fabs(angle - M_PI) <= tol : angle >= M_PI - tol;
}

std::vector<MmsContext::TempPoint> MmsContext::temporaries(
    const std::vector<Triangulation::PathResult>& pieces) const {
  std::vector<TempPoint> temps;
  temps.reserve(pieces.size());
  for (const auto& pr : pieces) {
    TempPoint t;
    if (pr.path.size() == 2) {
      const Point& a = pr.path.vertices[0];
      const Point& b = pr.path.vertices[1];
      t.p = Point(0.5 * (a.x + b.x), 0.5 * (a.y + b.y));
    } else {
      t.p = pr.path.vertices[1];
      t.piece_vid = pr.turn_vertices[0];
    }
    temps.push_back(t);
  }
  return temps;
}

std::vector<Point> MmsContext::pick_temporary_points(const ShootingState& st) const {
  std::vector<Triangulation::PathResult> pieces;
  for (std::size_t i = 0; i <= cut_count(); ++i) pieces.push_back(piece_path(st, i));
  std::vector<Point> out;
  for (const TempPoint& t : temporaries(pieces)) out.push_back(t.p);
  return out;
}

Point MmsContext::update_from_union(const TempPoint& t_prev, const TempPoint& t_next,
                                    std::size_t i, double* shift_out,
                                    const Point& current) const {
  const Triangulation& mesh = union_mesh_[i - 1];
  const CuttingSegment& cut = partition_->segments[i - 1];

  int tri_p;
  if (t_prev.piece_vid != kNoVertex) {
    tri_p = mesh.triangle_of_vertex(t_prev.piece_vid);  // piece i-1 keeps its ids
  } else {
    tri_p = mesh.locate(t_prev.p, 0, mesh.glue_offset());
  }
  int tri_n;
  if (t_next.piece_vid != kNoVertex) {
    tri_n = mesh.triangle_of_vertex(union_remap_[i - 1][t_next.piece_vid]);
  } else {
    tri_n = mesh.locate(t_next.p, mesh.glue_offset(), kNoVertex);
  }

  const Triangulation::PathResult sp = mesh.geodesic(t_prev.p, tri_p, t_next.p, tri_n);

  const double tol = 1e-12 * domain_->diagonal();
  const Segment cut_seg = cut.segment();
  std::vector<Point> hits;
  for (std::size_t k = 0; k + 1 < sp.path.size(); ++k) {
    const Segment leg = Segment::between(sp.path.vertices[k], sp.path.vertices[k + 1]);
    const SegmentIntersection isect = segment_intersection(leg, cut_seg);
    if (isect.kind == IntersectKind::overlap) {
      throw std::runtime_error("update_shooting_point: geodesic rides the cut");
    }
    if (isect.kind == IntersectKind::point) {
      bool dup = false;
      for (const Point& h : hits) {
        if (distance(h, isect.point) <= tol) dup = true;
      }
      if (!dup) hits.push_back(isect.point);
    }
  }
  if (hits.size() != 1) {
    std::ostringstream msg;
    msg << "update_shooting_point: expected one crossing of cut " << i << ", found "
        << hits.size();
    throw std::runtime_error(msg.str());
  }
  Point a_next = hits[0];
  if (distance(a_next, cut.u) <= tol) {
    throw std::runtime_error("update_shooting_point: intersection lands on u (B1 contact)");
  }
  if (shift_out != nullptr) *shift_out = distance(a_next, current);
  // Snap onto the cut parameterization so s carries no drift.
  const double s = cut_parameter(cut, a_next);
  return cut_seg.at(1.0 - s);  // segment runs u -> v, parameter s is 0 at v
}

Point MmsContext::update_shooting_point(const Point& t_prev, const Point& t_next,
                                        std::size_t i) const {
  if (i < 1 || i > cut_count()) throw std::out_of_range("update_shooting_point: cut index");
  return update_from_union({t_prev, kNoVertex}, {t_next, kNoVertex}, i, nullptr,
                           partition_->segments[i - 1].v);
}

Polyline MmsContext::state_gamma(const ShootingState& st) const {
  std::vector<Point> pts;
  for (std::size_t i = 0; i <= cut_count(); ++i) {
    const Triangulation::PathResult pr = piece_path(st, i);
    const std::size_t start = pts.empty() ? 0 : 1;
    for (std::size_t k = start; k < pr.path.size(); ++k) {
      pts.push_back(pr.path.vertices[k]);
    }
  }
  return Polyline(std::move(pts));
}

MmsContext::SweepResult MmsContext::collinear_update(const ShootingState& st,
                                                     bool record_gamma) const {
  const std::size_t N = cut_count();
  std::vector<Triangulation::PathResult> pieces;
  pieces.reserve(N + 1);
  for (std::size_t i = 0; i <= N; ++i) pieces.push_back(piece_path(st, i));
  const std::vector<TempPoint> temps = temporaries(pieces);

  SweepResult out;
  out.next = st;
  out.next.iteration = st.iteration + 1;
  out.record.j = st.iteration + 1;
  out.record.collinear_flags.resize(N);
  out.record.shifts.resize(N);
  out.record.upper_angles.resize(N);
  out.record.params.resize(N);

  const double diag = domain_->diagonal();
  bool all = true;
  double max_shift = 0.0;
  for (std::size_t i = 1; i <= N; ++i) {
    const Polyline& before = pieces[i - 1].path;
    const Polyline& after = pieces[i].path;
    const Point& prev_nb = before.vertices[before.size() - 2];
    const Point& next_nb = after.vertices[1];
    const double angle = angle_at(prev_nb, st.a[i], next_nb, partition_->segments[i - 1].u);
    const bool interior = st.s[i - 1] > 0.0;
    const bool holds = interior ? std::fabs(angle - M_PI) <= kAngleTolerance
                                : angle >= M_PI - kAngleTolerance;

    double shift = 0.0;
    if (!holds) {
      const Point a_next = update_from_union(temps[i - 1], temps[i], i, &shift, st.a[i]);
      out.next.a[i] = a_next;
      out.next.s[i - 1] = cut_parameter(partition_->segments[i - 1], a_next);
      max_shift = std::max(max_shift, shift);
    }
    out.record.collinear_flags[i - 1] = holds;
    out.record.shifts[i - 1] = shift;
    out.record.upper_angles[i - 1] = angle;
    out.record.params[i - 1] = out.next.s[i - 1];
    if (!holds) ++out.record.violated_cuts;
    all = all && holds;

    // Proposition-2 monitor: angle form vs shift form with matched
    // tolerances; a disagreement outside the 10x band counts as a mismatch.
    const bool angle_form = interior ? std::fabs(angle - M_PI) <= 1e-9 : angle >= M_PI - 1e-9;
    const bool shift_form = shift < 1e-9 * diag;
    if (angle_form != shift_form) {
      const bool angle_relaxed =
          interior ? std::fabs(angle - M_PI) <= 1e-8 : angle >= M_PI - 1e-8;
      const bool shift_relaxed = shift < 1e-8 * diag;
      if (!(angle_relaxed && shift_relaxed)) ++out.dual_test_mismatches;
    }
  }
  out.all_collinear = all;
  out.record.max_shift = max_shift;

  // Length bookkeeping of the resulting iterate.
  Polyline gamma_cur;
  {
    std::vector<Point> pts;
    for (std::size_t i = 0; i <= N; ++i) {
      const std::size_t start = pts.empty() ? 0 : 1;
      for (std::size_t k = start; k < pieces[i].path.size(); ++k) {
        pts.push_back(pieces[i].path.vertices[k]);
      }
    }
    gamma_cur = Polyline(std::move(pts));
  }
  const Polyline gamma_next = all ? gamma_cur : state_gamma(out.next);
  const __float128 len_cur = quad_length(gamma_cur);
  const __float128 len_next = all ? len_cur : quad_length(gamma_next);
  out.record.length = static_cast<double>(len_next);
  out.record.length_decrease = static_cast<double>(len_cur - len_next);
  if (record_gamma) out.record.gamma = gamma_next;
  return out;
}

namespace {

Polyline canonicalize_rope(const Polyline& gamma, double tol) {
  if (gamma.size() < 3) return gamma;
  std::vector<Point> cur = gamma.vertices;
  bool changed = true;
  while (changed && cur.size() >= 3) {
    changed = false;
    std::vector<Point> next;
    next.push_back(cur.front());
    for (std::size_t i = 1; i + 1 < cur.size(); ++i) {
      const Point& p = next.back();
      const Point& v = cur[i];
      const Point& q = cur[i + 1];
      if (p != q && point_segment_distance(v, Segment::between(p, q)) <= tol) {
        changed = true;
        continue;
      }
      next.push_back(v);
    }
    next.push_back(cur.back());
    cur = std::move(next);
  }
  return Polyline(std::move(cur));
}

}  // namespace

SolveResult solve(const RopeDomain& d, const Partition& part, const SolverConfig& config) {
  if (!(config.epsilon > 0.0) || config.max_iterations < 1) {
    throw std::invalid_argument("solve: epsilon must be positive and at least one iteration");
  }
  MmsContext ctx(d, part);
  ShootingState state = ctx.initial_state();

  SolveResult result;
  {
    IterationRecord r0;
    r0.j = 0;
    const Polyline gamma0 = ctx.state_gamma(state);
    r0.length = static_cast<double>(quad_length(gamma0));
    r0.params = state.s;
    if (config.record_history) r0.gamma = gamma0;
    result.history.push_back(std::move(r0));
  }

  Polyline final_gamma = ctx.state_gamma(state);
  result.status = SolveStatus::iteration_capped;
  while (state.iteration < config.max_iterations) {
    MmsContext::SweepResult sweep = ctx.collinear_update(state, true);
    state = std::move(sweep.next);
    final_gamma = std::move(sweep.record.gamma);
    sweep.record.gamma = config.record_history ? final_gamma : Polyline();
    result.dual_test_mismatches += sweep.dual_test_mismatches;
    const double max_shift = sweep.record.max_shift;
    result.history.push_back(std::move(sweep.record));
    ++result.iterations;
    if (max_shift < config.epsilon) {
      result.status = SolveStatus::converged;
      break;
    }
  }

  result.final_shooting_points = state.a;
  result.final_params = state.s;
  result.rope = canonicalize_rope(final_gamma, 1e-12 * d.diagonal());
  return result;
}

SolveResult solve(const RopeDomain& d, const SolverConfig& config) {
  const Partition part = make_vertical_partition(d, config.n_cuts);
  return solve(d, part, config);
}

}  // namespace rope
