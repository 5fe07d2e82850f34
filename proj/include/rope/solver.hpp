#pragma once

#include "rope/partition.hpp"

namespace rope {

struct SolverConfig {
  std::size_t n_cuts = 1;
  double epsilon = 1e-6;           // stop tolerance on the largest shooting-point shift
  std::size_t max_iterations = 10000;
  bool record_history = true;      // keep per-iteration paths in the records
};

enum class SolveStatus { converged, iteration_capped };

// Shooting points a_0 = b_tilde, a_1..a_N on the cuts, a_{N+1} = b. Each
// interior point is stored twice: as coordinates and as the cut parameter
// s (0 at v_i, 1 at u_i); coordinates are always re-derived from s so the
// parameter sequence carries no drift.
struct ShootingState {
  std::vector<Point> a;
  std::vector<double> s;
  std::size_t iteration = 0;
};

struct IterationRecord {
  std::size_t j = 0;                 // iteration index of the resulting path
  double length = 0.0;               // l(gamma^j)
  double max_shift = 0.0;            // max_i |a_i^next - a_i| of the producing sweep
  double length_decrease = 0.0;      // l(gamma^{j-1}) - l(gamma^j), high-precision
  std::vector<bool> collinear_flags; // per cut: did (B) hold before the sweep
  std::vector<double> shifts;        // per cut
  std::vector<double> upper_angles;  // per cut, radians
  std::vector<double> params;        // per cut: s_i of the resulting iterate
  std::size_t violated_cuts = 0;
  Polyline gamma;                    // populated when record_history is set
};

struct SolveResult {
  Polyline rope;                     // final path b_tilde -> b, pass-through vertices removed
  std::vector<IterationRecord> history;
  SolveStatus status = SolveStatus::converged;
  std::size_t iterations = 0;
  std::size_t dual_test_mismatches = 0;  // angle-form vs shift-form stop test disagreements
  std::vector<Point> final_shooting_points;
  std::vector<double> final_params;
};

// Caches the per-piece triangulations and the glued two-piece meshes the
// update rule runs in. All queries are read-only after construction.
class MmsContext {
 public:
  MmsContext(const RopeDomain& d, const Partition& part);

  const RopeDomain& domain() const { return *domain_; }
  const Partition& partition() const { return *partition_; }
  std::size_t cut_count() const { return partition_->segments.size(); }

  // Initial shooting points: a_i = v_i, bracketed by b_tilde and b.
  ShootingState initial_state() const;

  // Geodesic of piece i between the current shooting points a_i, a_{i+1}.
  Triangulation::PathResult piece_path(const ShootingState& st, std::size_t i) const;

  // Angle of the two adjacent piece geodesics at a_i, measured on the side
  // of the cut containing u_i.
  double upper_angle_at(const ShootingState& st, std::size_t i) const;

  // Collinear condition (B): angle equal to pi at interior points, at least
  // pi when a_i sits at v_i.
  bool collinear_condition_holds(const ShootingState& st, std::size_t i, double tol) const;

  // One temporary point per piece: the midpoint of a straight piece, else
  // the interior turn vertex adjacent to a_i.
  std::vector<Point> pick_temporary_points(const ShootingState& st) const;

  // SP(t_prev, t_next) in the glued pieces i-1 and i, intersected with cut
  // i. Throws when the intersection is missing or lands on u_i.
  Point update_shooting_point(const Point& t_prev, const Point& t_next, std::size_t i) const;

  struct SweepResult {
    ShootingState next;
    bool all_collinear = false;
    IterationRecord record;
    std::size_t dual_test_mismatches = 0;
  };

  // One full sweep of Procedure Collinear_Update: every temporary point and
  // every test reads the iteration-j snapshot; all commits happen together.
  SweepResult collinear_update(const ShootingState& st, bool record_gamma = true) const;

  Polyline state_gamma(const ShootingState& st) const;

 private:
  struct TempPoint {
    Point p;
    std::size_t piece_vid = kNoVertex;  // mesh vertex id within its piece, if a turn vertex
  };

  std::vector<TempPoint> temporaries(const std::vector<Triangulation::PathResult>& pieces) const;
  Point update_from_union(const TempPoint& t_prev, const TempPoint& t_next,
                          std::size_t i, double* shift_out, const Point& current) const;

  const RopeDomain* domain_;
  const Partition* partition_;
  std::vector<Triangulation> piece_mesh_;
  // Cut xi_i endpoints as mesh vertex ids: in piece i-1 (right side of that
  // piece) and in piece i (left side).
  struct CutIds {
    std::size_t u_in_prev, v_in_prev;
    std::size_t u_in_next, v_in_next;
  };
  std::vector<CutIds> cut_ids_;            // [i-1] for cut i
  std::vector<Triangulation> union_mesh_;  // [i-1]: pieces i-1 and i glued along cut i
  std::vector<std::vector<std::size_t>> union_remap_;  // piece-i vids -> union vids
};

// Full pipeline on a prepared domain: partition (built here when not
// supplied), initial state, sweeps until max_shift < epsilon or the
// iteration cap.
SolveResult solve(const RopeDomain& d, const SolverConfig& config);
SolveResult solve(const RopeDomain& d, const Partition& part, const SolverConfig& config);

// Shooting-point parameter of a point on a cut (0 at v, 1 at u).
double cut_parameter(const CuttingSegment& cut, const Point& p);

}  // namespace rope
