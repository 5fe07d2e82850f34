#include "rope/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "rope/polygon.hpp"

namespace rope {

namespace {

// splitmix64: portable and byte-stable across platforms, unlike the
// standard distributions.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t k) { return k == 0 ? 0 : next() % k; }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool coin() { return (next() & 1) != 0; }
};

std::size_t lexicographic_max_index(const std::vector<Point>& pts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].x > pts[best].x || (pts[i].x == pts[best].x && pts[i].y > pts[best].y)) {
      best = i;
    }
  }
  return best;
}

// Distinct integers in [lo, hi], sampled without replacement.
std::vector<long long> distinct_ints(Rng& rng, std::size_t count, long long lo, long long hi) {
  std::set<long long> chosen;
  const auto range = static_cast<std::uint64_t>(hi - lo + 1);
  if (range < count) throw std::invalid_argument("distinct_ints: range too small");
  while (chosen.size() < count) {
    chosen.insert(lo + static_cast<long long>(rng.below(range)));
  }
  return {chosen.begin(), chosen.end()};
}

PolygonFile monotone_fixture(std::size_t n, Rng& rng) {
  const long long W = static_cast<long long>(4 * n);
  const long long H = static_cast<long long>(std::max<std::size_t>(4, n));
  const std::size_t interior = n - 2;
  const std::vector<long long> xs = distinct_ints(rng, interior, 1, W - 1);

  std::vector<Point> lower, upper;
  for (long long x : xs) {
    const double y = static_cast<double>(1 + static_cast<long long>(rng.below(H)));
    if (rng.coin()) {
      lower.push_back(Point(static_cast<double>(x), -y));
    } else {
      upper.push_back(Point(static_cast<double>(x), y));
    }
  }

  std::vector<Point> ring;
  ring.push_back(Point(0, 0));
  for (const Point& p : lower) ring.push_back(p);  // xs already ascending
  ring.push_back(Point(static_cast<double>(W), 0));
  for (auto it = upper.rbegin(); it != upper.rend(); ++it) ring.push_back(*it);

  PolygonFile file;
  file.vertices = std::move(ring);
  file.b_index = lexicographic_max_index(file.vertices);
  return file;
}

PolygonFile comb_fixture(std::size_t n, Rng& rng) {
  if (n < 4) throw std::invalid_argument("comb_fixture: needs at least 4 vertices");
  const std::size_t teeth = n >= 8 ? (n - 4) / 4 : 0;
  const std::size_t extra = n - 4 - 4 * teeth;
  const long long W = std::max<long long>(2 * static_cast<long long>(teeth) + 1,
                                          static_cast<long long>(extra) + 2);
  const long long B = 2;

  std::vector<Point> ring;
  ring.push_back(Point(0, 0));
  if (extra > 0) {
    const std::vector<long long> xs = distinct_ints(rng, extra, 1, W - 1);
    for (long long x : xs) ring.push_back(Point(static_cast<double>(x), 0));
  }
  ring.push_back(Point(static_cast<double>(W), 0));
  ring.push_back(Point(static_cast<double>(W), static_cast<double>(B)));
  for (std::size_t i = teeth; i-- > 0;) {
    const double x1 = static_cast<double>(2 * i + 1);
    const double x2 = static_cast<double>(2 * i + 2);
    const double h = static_cast<double>(B + 1 + static_cast<long long>(rng.below(teeth + 2)));
    ring.push_back(Point(x2, static_cast<double>(B)));
    ring.push_back(Point(x2, h));
    ring.push_back(Point(x1, h));
    ring.push_back(Point(x1, static_cast<double>(B)));
  }
  ring.push_back(Point(0, static_cast<double>(B)));

  PolygonFile file;
  file.vertices = std::move(ring);
  file.b_index = lexicographic_max_index(file.vertices);
  return file;
}

PolygonFile convex_fixture(std::size_t n, Rng& rng) {
  const double scale = 50000.0;
  for (int attempt = 0; attempt < 200; ++attempt) {
    // Valtr: random convex position vectors from paired coordinate deltas.
    std::vector<double> xs(n), ys(n);
    for (double& v : xs) v = rng.unit();
    for (double& v : ys) v = rng.unit();
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());

    auto deltas = [&](const std::vector<double>& vs) {
      std::vector<double> out;
      double last_a = vs.front(), last_b = vs.front();
      for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
        if (rng.coin()) {
          out.push_back(vs[i] - last_a);
          last_a = vs[i];
        } else {
          out.push_back(last_b - vs[i]);
          last_b = vs[i];
        }
      }
      out.push_back(vs.back() - last_a);
      out.push_back(last_b - vs.back());
      return out;
    };
    std::vector<double> dx = deltas(xs);
    std::vector<double> dy = deltas(ys);
    // Random pairing.
    for (std::size_t i = dy.size(); i > 1; --i) {
      std::swap(dy[i - 1], dy[rng.below(i)]);
    }
    std::vector<Point> vecs(n);
    for (std::size_t i = 0; i < n; ++i) vecs[i] = Point(dx[i], dy[i]);
    std::sort(vecs.begin(), vecs.end(), [](const Point& a, const Point& b) {
      return std::atan2(a.y, a.x) < std::atan2(b.y, b.x);
    });

    std::vector<Point> ring;
    double cx = 0.0, cy = 0.0;
    double minx = 0.0, miny = 0.0;
    for (const Point& v : vecs) {
      ring.push_back(Point(cx, cy));
      cx += v.x;
      cy += v.y;
      minx = std::min(minx, cx);
      miny = std::min(miny, cy);
    }
    for (Point& p : ring) {
      p = Point(std::round((p.x - minx) * scale), std::round((p.y - miny) * scale));
    }

    try {
      const SimplePolygon poly = SimplePolygon::validate(ring);
      if (convex_hull_indices(poly).size() != n) continue;  // rounding collapsed a vertex
      PolygonFile file;
      file.vertices = poly.vertices();
      file.b_index = lexicographic_max_index(file.vertices);
      return file;
    } catch (const ValidationError&) {
      continue;
    }
  }
  throw std::runtime_error("convex_fixture: could not build a strictly convex polygon");
}

}  // namespace

FixtureFamily fixture_family_from_string(const std::string& name) {
  if (name == "convex") return FixtureFamily::convex;
  if (name == "monotone") return FixtureFamily::monotone;
  if (name == "comb") return FixtureFamily::comb;
  throw std::invalid_argument("unknown fixture family: " + name);
}

PolygonFile generate_fixture(FixtureFamily family, std::size_t n_vertices, std::uint64_t seed) {
  if (n_vertices < 3) throw std::invalid_argument("generate_fixture: need at least 3 vertices");
  Rng rng(seed ^ (static_cast<std::uint64_t>(family) << 56) ^
          (static_cast<std::uint64_t>(n_vertices) << 32));
  switch (family) {
    case FixtureFamily::monotone: return monotone_fixture(n_vertices, rng);
    case FixtureFamily::comb: return comb_fixture(n_vertices, rng);
    case FixtureFamily::convex: return convex_fixture(n_vertices, rng);
  }
  throw std::logic_error("generate_fixture: unreachable");
}

}  // namespace rope
