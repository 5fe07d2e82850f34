#pragma once

#include <string>

#include "rope/domain.hpp"
#include "rope/shortest_path.hpp"

namespace rope {

// Position on the domain boundary chain: edge index plus parameter in
// [0, 1); t == 0 means exactly at chain vertex `edge`.
struct ChainAnchor {
  std::size_t edge = 0;
  double t = 0.0;
  double key() const { return static_cast<double>(edge) + t; }
};

struct CuttingSegment {
  std::size_t index = 0;  // 1-based, ordered from the b_tilde side
  Point u;                // endpoint on B1
  Point v;                // endpoint on B2
  ChainAnchor u_anchor;
  ChainAnchor v_anchor;
  Segment segment() const { return Segment::between(u, v); }
};

struct PartitionPiece {
  SimplePolygon poly;
  // Edge indices within poly of the bounding cuts; -1 where the bound is
  // the degenerate point-cut at b_tilde (piece 0) or b (piece N).
  int left_cut_edge = -1;   // hosts xi_i, oriented v_i -> u_i
  int right_cut_edge = -1;  // hosts xi_{i+1}, oriented u_{i+1} -> v_{i+1}
  std::size_t left_point_vertex = kNoVertex;   // piece 0: poly vertex of b_tilde
  std::size_t right_point_vertex = kNoVertex;  // piece N: poly vertex of b
};

struct Partition {
  std::vector<CuttingSegment> segments;  // xi_1 .. xi_N
  std::vector<PartitionPiece> pieces;    // D_0 .. D_N (may be empty for raw cut sets)
};

// N vertical cuts at x-stations equally spaced along the unrolled journey of
// the boundary from b_tilde around the polygon back to b. Stations landing
// within 1e-9 of a vertex x-coordinate are nudged by half the minimum x-gap.
// Requires the polygon boundary to be x-monotone. The result satisfies all
// five decomposition conditions (verified; throws on failure).
Partition make_vertical_partition(const RopeDomain& d, std::size_t n_cuts);

// Manual entry point: accepts arbitrary user segments, anchors them on the
// chain, orders them, and assembles pieces when possible. Callers should run
// verify_partition on the result.
Partition make_partition_from_cuts(const RopeDomain& d, const std::vector<Segment>& cuts);

struct PartitionReport {
  bool endpoints_and_interior = false;  // u on B1, v on B2, ]u,v[ in int D
  bool separation = false;              // each cut strictly separates b_tilde from b
  bool pairwise_disjoint = false;
  bool coverage = false;                // piece areas sum to area(D)
  bool interior_disjoint = false;       // pairwise piece overlap area ~ 0
  std::string detail;

  bool ok() const {
    return endpoints_and_interior && separation && pairwise_disjoint &&
           coverage && interior_disjoint;
  }
};

// Checks the five decomposition conditions independently of how the
// partition was built.
PartitionReport verify_partition(const RopeDomain& d, const Partition& part);

}  // namespace rope
