#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rope/domain.hpp"
#include "rope/fixtures.hpp"
#include "rope/shortest_path.hpp"

using namespace rope;

namespace {

SimplePolygon unit_square() {
  return SimplePolygon::validate({Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)});
}

RopeDomain domain_for(const SimplePolygon& poly, std::size_t b, double margin = 0.25) {
  const auto cert = visibility_from_infinity(poly, b);
  REQUIRE(cert.has_value());
  return build_domain(poly, b, *cert, margin);
}

}  // namespace

TEST_CASE("bounding rectangle inflates by the diagonal fraction") {
  const SimplePolygon sq = unit_square();
  const Rectangle r = bounding_rectangle(sq, 0.1);
  const double pad = 0.1 * std::sqrt(2.0);
  CHECK(r.xmin == doctest::Approx(-pad));
  CHECK(r.ymin == doctest::Approx(-pad));
  CHECK(r.xmax == doctest::Approx(1 + pad));
  CHECK(r.ymax == doctest::Approx(1 + pad));
  CHECK_THROWS_AS(bounding_rectangle(sq, 0.0), std::invalid_argument);

  // A degenerate-thin polygon still gets clearance on every side.
  const SimplePolygon thin = SimplePolygon::validate(
      {Point(0, 0), Point(100, 0), Point(100, 1), Point(0, 1)});
  const Rectangle rt = bounding_rectangle(thin, 0.05);
  CHECK(rt.ymin < 0.0);
  CHECK(rt.ymax > 1.0);
  CHECK(rt.xmin < 0.0);
  CHECK(rt.xmax > 100.0);
}

TEST_CASE("bounding rectangle strictly contains random polygons") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const PolygonFile f = generate_fixture(FixtureFamily::monotone, 100, seed);
    const SimplePolygon poly = SimplePolygon::validate(f.vertices);
    const Rectangle r = bounding_rectangle(poly, 0.25);
    for (const Point& v : poly.vertices()) {
      CHECK(r.strictly_contains(v));
      const double clearance =
          std::min(std::min(v.x - r.xmin, r.xmax - v.x), std::min(v.y - r.ymin, r.ymax - v.y));
      CHECK(clearance > 0.0);
    }
  }
}

TEST_CASE("domain chain structure from the unit square") {
  const SimplePolygon sq = unit_square();
  const RopeDomain d = domain_for(sq, 2);  // corner (1,1)

  // b_tilde .. c_tilde .. 4 corners .. c .. b .. remaining P vertices.
  CHECK(d.chain.size() == sq.size() + 7);
  CHECK(d.b_tilde() == sq.vertex(2));
  CHECK(d.b() == sq.vertex(2));
  CHECK(d.chain[d.c_tilde_pos] == d.c());
  CHECK(d.b_pos == d.c_pos + 1);
  CHECK(signed_area(d.chain) > 0.0);
  CHECK(signed_area(d.chain) ==
        doctest::Approx((d.rect.xmax - d.rect.xmin) * (d.rect.ymax - d.rect.ymin) - sq.area()));

  // B2 visits the polygon clockwise: b, then P in reverse ccw order.
  for (std::size_t k = 1; k < sq.size(); ++k) {
    CHECK(d.chain[d.b_pos + k] == sq.vertex((2 + sq.size() - k) % sq.size()));
  }

  // The cut lies in the region between the polygon and the rectangle. In
  // the cut-open representation its interior is the two coincident walls,
  // so locate() reports boundary there.
  const Point mid((d.b().x + d.c().x) / 2, (d.b().y + d.c().y) / 2);
  CHECK(d.rect.strictly_contains(mid));
  CHECK(sq.locate(mid) == PointLocation::exterior);
  CHECK(d.locate(mid) == PointLocation::boundary);
}

TEST_CASE("domain interior excludes the polygon") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const PolygonFile f = generate_fixture(FixtureFamily::comb, 32, seed);
    const SimplePolygon poly = SimplePolygon::validate(f.vertices);
    const RopeDomain d = domain_for(poly, *f.b_index);
    // A point inside P is outside D; a point between P and R is inside.
    double cx = 0, cy = 0;
    for (const Point& v : poly.vertices()) {
      cx += v.x;
      cy += v.y;
    }
    cx /= static_cast<double>(poly.size());
    cy /= static_cast<double>(poly.size());
    if (poly.locate(Point(cx, cy)) == PointLocation::interior) {
      CHECK(d.locate(Point(cx, cy)) == PointLocation::exterior);
    }
    const Point between(d.rect.xmin / 2 + poly.vertex(0).x / 2 - 0.125,
                        d.rect.ymin / 2 + poly.vertex(0).y / 2 - 0.125);
    if (poly.locate(between) == PointLocation::exterior &&
        d.rect.strictly_contains(between)) {
      CHECK(d.locate(between) != PointLocation::exterior);
    }
  }
}

TEST_CASE("build_domain rejects mismatched certificates") {
  const SimplePolygon sq = unit_square();
  const auto cert = visibility_from_infinity(sq, 2);
  REQUIRE(cert.has_value());
  CHECK_THROWS_AS(build_domain(sq, 1, *cert, 0.25), std::invalid_argument);
}

TEST_CASE("rope is independent of the rectangle margin") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const PolygonFile f = generate_fixture(FixtureFamily::monotone, 24, seed);
    const SimplePolygon poly = SimplePolygon::validate(f.vertices);

    std::vector<Polyline> ropes;
    for (double margin : {0.1, 0.25, 1.0}) {
      const RopeDomain d = domain_for(poly, *f.b_index, margin);
      const GeodesicPath g = vg_shortest_path_on_chain(
          d.chain, 0, d.b_pos, {d.wall_edge_b_tilde(), d.wall_edge_b()});
      ropes.push_back(g.path);
    }
    REQUIRE(ropes[0].size() == ropes[1].size());
    REQUIRE(ropes[0].size() == ropes[2].size());
    for (std::size_t i = 0; i < ropes[0].size(); ++i) {
      CHECK(distance(ropes[0].vertices[i], ropes[1].vertices[i]) <= 1e-9);
      CHECK(distance(ropes[0].vertices[i], ropes[2].vertices[i]) <= 1e-9);
    }
  }
}

TEST_CASE("exact shortest path avoids B1") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const PolygonFile f = generate_fixture(FixtureFamily::comb, 28, seed);
    const SimplePolygon poly = SimplePolygon::validate(f.vertices);
    const RopeDomain d = domain_for(poly, *f.b_index);
    const GeodesicPath g = vg_shortest_path_on_chain(
        d.chain, 0, d.b_pos, {d.wall_edge_b_tilde(), d.wall_edge_b()});
    CHECK(sp_avoids_b1(g.path, d));
  }

  // A path deliberately routed along a rectangle edge fails the check.
  const SimplePolygon sq = unit_square();
  const RopeDomain d = domain_for(sq, 2);
  const Polyline along_rect({d.b_tilde(), d.rect.corner(0), d.rect.corner(1), d.b()});
  CHECK_FALSE(sp_avoids_b1(along_rect, d));
}

TEST_CASE("rope on a convex polygon is its boundary chain") {
  const SimplePolygon sq = unit_square();
  const RopeDomain d = domain_for(sq, 2);
  const GeodesicPath g = vg_shortest_path_on_chain(
      d.chain, 0, d.b_pos, {d.wall_edge_b_tilde(), d.wall_edge_b()});
  // Full ccw loop from b back to b: 5 vertices of the square chain.
  REQUIRE(g.path.size() == sq.size() + 1);
  for (std::size_t k = 0; k < g.path.size(); ++k) {
    CHECK(g.path.vertices[k] == sq.vertex((2 + k) % sq.size()));
  }
  CHECK(polyline_length(g.path) == doctest::Approx(4.0));
}

TEST_CASE("rope from a hull vertex is a suffix of the closed rope") {
  // Remark-style reduction: the closed rope b..b contains every hull
  // vertex; the open rope a..b is its suffix from the last visit to a.
  const SimplePolygon sq = unit_square();
  const RopeDomain d = domain_for(sq, 2);
  const GeodesicPath g = vg_shortest_path_on_chain(
      d.chain, 0, d.b_pos, {d.wall_edge_b_tilde(), d.wall_edge_b()});
  const Point a = sq.vertex(0);  // (0,0), a hull vertex
  std::size_t last = g.path.size();
  for (std::size_t i = 0; i < g.path.size(); ++i) {
    if (g.path.vertices[i] == a) last = i;
  }
  REQUIRE(last < g.path.size());
  // Suffix (0,0) -> (1,0)? No: ccw from (0,0) the next square vertex toward
  // b = (1,1) passes (1,0).
  CHECK(g.path.vertices[last + 1] == sq.vertex(1));
  CHECK(g.path.vertices.back() == d.b());
}
