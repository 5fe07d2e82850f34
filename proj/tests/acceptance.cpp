// Acceptance suite: end-to-end checks of the solver against its independent
// oracles, printed one pass/fail line per criterion. Exits nonzero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rope/fixtures.hpp"
#include "rope/solver.hpp"

using namespace rope;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

struct CriterionResult {
  bool pass = true;
  std::string detail;
  long checks = 0;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void expect(bool ok, const std::string& why) {
    ++checks;
    if (!ok) fail(why);
  }
};

struct FixtureRun {
  PolygonFile file;
  SimplePolygon polygon;
  RopeDomain domain;
  Partition partition;
  SolveResult result;
  GeodesicPath oracle;
  double diag = 0.0;
};

GeodesicPath domain_oracle(const RopeDomain& d) {
  return vg_shortest_path_on_chain(d.chain, 0, d.b_pos,
                                   {d.wall_edge_b_tilde(), d.wall_edge_b()});
}

// The shared fixture suite for criteria 1-4 and 10.
std::vector<FixtureRun> run_fixture_suite(CriterionResult& r1) {
  const FixtureFamily families[] = {FixtureFamily::convex, FixtureFamily::monotone,
                                    FixtureFamily::comb};
  const std::size_t sizes[] = {10, 20, 50, 100, 200, 500};
  const std::size_t cut_counts[] = {1, 2, 4, 8, 16, 32};

  std::vector<FixtureRun> runs;
  const int total = 204;
  for (int idx = 0; idx < total; ++idx) {
    FixtureRun run;
    const FixtureFamily family = families[idx % 3];
    const std::size_t n = sizes[(idx / 3) % 6];
    const std::size_t n_cuts = cut_counts[(idx / 18) % 6];
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(idx);

    run.file = generate_fixture(family, n, seed);
    run.polygon = SimplePolygon::validate(run.file.vertices);

    // Vary the endpoint across hull vertices; all are visible from infinity.
    const std::vector<std::size_t> hull = convex_hull_indices(run.polygon);
    const std::size_t b = hull[static_cast<std::size_t>(idx) % hull.size()];
    const auto cert = visibility_from_infinity(run.polygon, b);
    if (!cert) {
      r1.fail("hull vertex refused visibility (fixture " + std::to_string(idx) + ")");
      continue;
    }
    run.domain = build_domain(run.polygon, b, *cert, 0.25);
    run.diag = run.domain.diagonal();
    run.partition = make_vertical_partition(run.domain, n_cuts);

    SolverConfig config;
    config.n_cuts = n_cuts;
    config.epsilon = 1e-9;
    config.record_history = true;
    run.result = solve(run.domain, run.partition, config);
    run.oracle = domain_oracle(run.domain);
    runs.push_back(std::move(run));
  }
  r1.expect(static_cast<int>(runs.size()) == total, "fixture suite incomplete");
  return runs;
}

void criterion_1(const std::vector<FixtureRun>& runs, CriterionResult& r) {
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const FixtureRun& run = runs[k];
    const std::string tag = " (fixture " + std::to_string(k) + ")";
    r.expect(run.result.status == SolveStatus::converged, "solver did not converge" + tag);
    const double ls = polyline_length(run.result.rope);
    const double lo = polyline_length(run.oracle.path);
    r.expect(std::fabs(ls - lo) <= 1e-6 * lo,
             "length gap " + std::to_string(std::fabs(ls - lo) / lo) + tag);
    const double hd = hausdorff_distance(run.result.rope, run.oracle.path);
    r.expect(hd <= 1e-4 * run.diag, "hausdorff " + std::to_string(hd) + tag);
  }
}

void criterion_2(const std::vector<FixtureRun>& runs, CriterionResult& r) {
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const FixtureRun& run = runs[k];
    const double l0 = run.result.history.front().length;
    for (std::size_t j = 1; j < run.result.history.size(); ++j) {
      const IterationRecord& cur = run.result.history[j];
      const IterationRecord& prev = run.result.history[j - 1];
      r.expect(cur.length <= prev.length + 1e-12 * l0,
               "length increased (fixture " + std::to_string(k) + ", iter " +
                   std::to_string(j) + ")");
      bool any_false = false;
      for (bool f : cur.collinear_flags) any_false = any_false || !f;
      if (any_false) {
        r.expect(cur.length_decrease > 0.0,
                 "no strict decrease under violated flags (fixture " + std::to_string(k) +
                     ", iter " + std::to_string(j) + ")");
      }
    }
  }
}

void criterion_3(const std::vector<FixtureRun>& runs, CriterionResult& r) {
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const FixtureRun& run = runs[k];
    for (std::size_t j = 1; j < run.result.history.size(); ++j) {
      const auto& cur = run.result.history[j].params;
      const auto& prev = run.result.history[j - 1].params;
      for (std::size_t i = 0; i < cur.size(); ++i) {
        r.expect(cur[i] >= prev[i], "parameter decreased (fixture " + std::to_string(k) + ")");
        r.expect(cur[i] < 1.0, "parameter reached u (fixture " + std::to_string(k) + ")");
      }
    }
  }
}

void criterion_4(const std::vector<FixtureRun>& runs, CriterionResult& r) {
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const FixtureRun& run = runs[k];
    const double diag = run.diag;
    for (std::size_t j = 1; j < run.result.history.size(); ++j) {
      const IterationRecord& cur = run.result.history[j];
      const auto& prev_params = run.result.history[j - 1].params;
      for (std::size_t i = 0; i < cur.upper_angles.size(); ++i) {
        const bool interior = prev_params[i] > 0.0;
        const double angle = cur.upper_angles[i];
        const double shift = cur.shifts[i];
        const bool angle_form =
            interior ? std::fabs(angle - M_PI) <= 1e-9 : angle >= M_PI - 1e-9;
        const bool shift_form = shift < 1e-9 * diag;
        ++r.checks;
        if (angle_form != shift_form) {
          const bool angle_relax =
              interior ? std::fabs(angle - M_PI) <= 1e-8 : angle >= M_PI - 1e-8;
          const bool shift_relax = shift < 1e-8 * diag;
          if (!(angle_relax && shift_relax)) {
            r.fail("stop-test forms disagree outside the band (fixture " +
                   std::to_string(k) + ", iter " + std::to_string(j) + ", cut " +
                   std::to_string(i + 1) + ")");
          }
        }
      }
    }
  }
}

void criterion_5(CriterionResult& r) {
  struct Rng {
    std::uint64_t state;
    std::uint64_t next() {
      state += 0x9e3779b97f4a7c15ull;
      std::uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      return z ^ (z >> 31);
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    std::uint64_t below(std::uint64_t k) { return k == 0 ? 0 : next() % k; }
  } rng{777};

  const FixtureFamily families[] = {FixtureFamily::convex, FixtureFamily::monotone,
                                    FixtureFamily::comb};
  int done = 0;
  std::uint64_t seed = 5000;
  while (done < 500) {
    ++seed;
    PolygonFile f;
    try {
      f = generate_fixture(families[seed % 3], 8 + rng.below(56), seed);
    } catch (const std::exception&) {
      continue;
    }
    const SimplePolygon poly = SimplePolygon::validate(f.vertices);
    const Triangulation mesh = Triangulation::from_polygon(poly);

    double xlo = poly.vertex(0).x, xhi = xlo, ylo = poly.vertex(0).y, yhi = ylo;
    for (const Point& p : poly.vertices()) {
      xlo = std::min(xlo, p.x);
      xhi = std::max(xhi, p.x);
      ylo = std::min(ylo, p.y);
      yhi = std::max(yhi, p.y);
    }
    auto interior_point = [&]() {
      while (true) {
        const Point p(xlo + rng.unit() * (xhi - xlo), ylo + rng.unit() * (yhi - ylo));
        if (poly.locate(p) == PointLocation::interior) return p;
      }
    };

    for (int q = 0; q < 2 && done < 500; ++q) {
      const Point x = interior_point();
      const Point y = interior_point();
      if (x == y) continue;
      const auto funnel = mesh.geodesic(x, mesh.locate(x), y, mesh.locate(y));
      const GeodesicPath oracle = vg_shortest_path(poly, x, y);
      const double lf = polyline_length(funnel.path);
      const double lo = polyline_length(oracle.path);
      ++done;
      r.expect(std::fabs(lf - lo) <= 1e-9 * std::max(1.0, lo),
               "length mismatch at instance " + std::to_string(done));
      if (funnel.path.size() != oracle.path.size()) {
        r.fail("turn-sequence size mismatch at instance " + std::to_string(done));
        continue;
      }
      for (std::size_t i = 0; i < funnel.turn_vertices.size(); ++i) {
        r.expect(funnel.turn_vertices[i] == oracle.interior_vertex_indices[i],
                 "turn-vertex mismatch at instance " + std::to_string(done));
      }
    }
  }
}

void criterion_6(CriterionResult& r) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t n = 4 + 4 * static_cast<std::size_t>(seed % 5);
    const PolygonFile f = generate_fixture(FixtureFamily::convex, n, seed);
    const SimplePolygon poly = SimplePolygon::validate(f.vertices);
    const std::vector<std::size_t> hull = convex_hull_indices(poly);
    const std::size_t b = hull[seed % hull.size()];
    const auto cert = visibility_from_infinity(poly, b);
    if (!cert) {
      r.fail("convex hull vertex refused visibility");
      continue;
    }
    const RopeDomain d = build_domain(poly, b, *cert, 0.25);
    SolverConfig config;
    config.n_cuts = 1 + seed % 8;
    config.epsilon = 1e-9;
    const SolveResult result = solve(d, config);
    r.expect(result.status == SolveStatus::converged, "convex run did not converge");

    // Closed rope: the full counterclockwise boundary chain from b to b.
    if (result.rope.size() != poly.size() + 1) {
      r.fail("convex rope has " + std::to_string(result.rope.size()) + " vertices, want " +
             std::to_string(poly.size() + 1));
      continue;
    }
    for (std::size_t k = 0; k < result.rope.size(); ++k) {
      r.expect(result.rope.vertices[k] == poly.vertex((b + k) % poly.size()),
               "convex rope vertex differs from the boundary chain");
    }

    // Open rope from another hull vertex a: the suffix from the last visit.
    const std::size_t a = hull[(seed + 2) % hull.size()];
    if (a != b) {
      std::size_t last = result.rope.size();
      for (std::size_t k = 0; k < result.rope.size(); ++k) {
        if (result.rope.vertices[k] == poly.vertex(a)) last = k;
      }
      r.expect(last < result.rope.size(), "rope misses the hull vertex a");
      if (last < result.rope.size()) {
        for (std::size_t k = last; k < result.rope.size(); ++k) {
          r.expect(result.rope.vertices[k] == poly.vertex((a + (k - last)) % poly.size()),
                   "suffix rope differs from the chain a..b");
        }
      }
    }
  }
}

void criterion_7(CriterionResult& r) {
  const PolygonFile f = generate_fixture(FixtureFamily::monotone, 3000, 7);
  const SimplePolygon poly = SimplePolygon::validate(f.vertices);
  const auto cert = visibility_from_infinity(poly, *f.b_index);
  if (!cert) {
    r.fail("fixture endpoint refused visibility");
    return;
  }
  const RopeDomain d = build_domain(poly, *f.b_index, *cert, 0.25);
  const Partition part = make_vertical_partition(d, 200);

  SolverConfig config;
  config.n_cuts = 200;
  config.max_iterations = 100000;
  config.record_history = false;

  // Warm-up run excluded from the timings.
  config.epsilon = 1.0;
  (void)solve(d, part, config);

  std::vector<double> lengths, runtimes;
  std::vector<std::size_t> iterations;
  for (int decade = 0; decade <= 9; ++decade) {
    config.epsilon = std::pow(10.0, -decade);
    double best_time = 0.0;
    SolveResult result;
    // Median of three timings; the result is deterministic across repeats.
    std::vector<double> times;
    for (int rep = 0; rep < 3; ++rep) {
      const double t0 = now_seconds();
      result = solve(d, part, config);
      times.push_back(now_seconds() - t0);
    }
    std::sort(times.begin(), times.end());
    best_time = times[1];
    r.expect(result.status == SolveStatus::converged, "sweep run not converged");
    lengths.push_back(result.history.back().length);
    runtimes.push_back(best_time);
    iterations.push_back(result.iterations);
  }

  for (std::size_t k = 1; k < lengths.size(); ++k) {
    r.expect(lengths[k] <= lengths[k - 1] + 1e-9 * lengths[0], "length column increased");
    r.expect(runtimes[k] >= runtimes[k - 1] * (1.0 - 1e-12), "runtime column decreased");
  }
  // Lengths freeze to three decimals from 1e-4 on.
  const double frozen = std::round(lengths.back() * 1000.0) / 1000.0;
  for (std::size_t k = 4; k < lengths.size(); ++k) {
    r.expect(std::round(lengths[k] * 1000.0) / 1000.0 == frozen,
             "length not constant to 3 decimals from 1e-4 on");
  }
  std::printf("    criterion 7 sweep:");
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    std::printf(" [1e-%zu: %.3f, %zu it, %.3fs]", k, lengths[k], iterations[k], runtimes[k]);
  }
  std::printf("\n");
}

void criterion_8(CriterionResult& r) {
  const std::size_t ns[] = {250, 500, 1000, 2000, 4000};
  std::vector<double> per_iteration;
  for (std::size_t n : ns) {
    const PolygonFile f = generate_fixture(FixtureFamily::monotone, n, 11);
    const SimplePolygon poly = SimplePolygon::validate(f.vertices);
    const auto cert = visibility_from_infinity(poly, *f.b_index);
    if (!cert) {
      r.fail("scaling fixture refused visibility");
      return;
    }
    const RopeDomain d = build_domain(poly, *f.b_index, *cert, 0.25);
    const Partition part = make_vertical_partition(d, 16);
    SolverConfig config;
    config.n_cuts = 16;
    config.epsilon = 1e-6;
    config.record_history = false;

    std::vector<double> times;
    std::size_t iters = 0;
    for (int rep = 0; rep < 5; ++rep) {
      const double t0 = now_seconds();
      const SolveResult result = solve(d, part, config);
      times.push_back(now_seconds() - t0);
      iters = std::max<std::size_t>(result.iterations, 1);
      r.expect(result.status == SolveStatus::converged, "scaling run not converged");
    }
    std::sort(times.begin(), times.end());
    per_iteration.push_back(times[2] / static_cast<double>(iters));
  }
  // Log-log slope by least squares.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::size_t m = per_iteration.size();
  for (std::size_t k = 0; k < m; ++k) {
    const double x = std::log(static_cast<double>(ns[k]));
    const double y = std::log(per_iteration[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (static_cast<double>(m) * sxy - sx * sy) /
                       (static_cast<double>(m) * sxx - sx * sx);
  std::printf("    criterion 8 per-iteration seconds:");
  for (std::size_t k = 0; k < m; ++k) std::printf(" [n=%zu: %.2e]", ns[k], per_iteration[k]);
  std::printf(" slope=%.3f\n", slope);
  r.expect(slope <= 1.15, "per-iteration time grows superlinearly, slope " +
                              std::to_string(slope));
}

void criterion_9(CriterionResult& r) {
  int done = 0;
  std::uint64_t seed = 8000;
  const FixtureFamily families[] = {FixtureFamily::convex, FixtureFamily::monotone,
                                    FixtureFamily::comb};
  while (done < 20) {
    ++seed;
    PolygonFile f;
    try {
      f = generate_fixture(families[seed % 3], 12 + 4 * (seed % 12), seed);
    } catch (const std::exception&) {
      continue;
    }
    const SimplePolygon poly = SimplePolygon::validate(f.vertices);
    const auto cert = visibility_from_infinity(poly, *f.b_index);
    if (!cert) continue;

    std::vector<Polyline> ropes;
    bool all_converged = true;
    for (const double margin : {0.1, 0.25, 1.0}) {
      const RopeDomain d = build_domain(poly, *f.b_index, *cert, margin);
      SolverConfig config;
      config.n_cuts = 1 + seed % 6;
      config.epsilon = 1e-9;
      config.record_history = false;
      const SolveResult result = solve(d, config);
      all_converged = all_converged && result.status == SolveStatus::converged;
      ropes.push_back(result.rope);
    }
    ++done;
    r.expect(all_converged, "margin run not converged (seed " + std::to_string(seed) + ")");
    r.expect(ropes[0].size() == ropes[1].size() && ropes[1].size() == ropes[2].size(),
             "margin ropes differ in vertex count (seed " + std::to_string(seed) + ")");
    if (ropes[0].size() == ropes[1].size() && ropes[1].size() == ropes[2].size()) {
      for (std::size_t i = 0; i < ropes[0].size(); ++i) {
        r.expect(distance(ropes[0].vertices[i], ropes[1].vertices[i]) <= 1e-9 &&
                     distance(ropes[0].vertices[i], ropes[2].vertices[i]) <= 1e-9,
                 "margin ropes diverge (seed " + std::to_string(seed) + ")");
      }
    }
  }
}

void criterion_10(const std::vector<FixtureRun>& runs, CriterionResult& r) {
  for (std::size_t k = 0; k < runs.size(); ++k) {
    r.expect(sp_avoids_b1(runs[k].result.rope, runs[k].domain),
             "rope touches B1 (fixture " + std::to_string(k) + ")");
  }
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int idx, const char* title, const CriterionResult& r, double secs) {
    std::printf("%s criterion %d: %s (%ld checks, %.1fs)%s%s\n", r.pass ? "PASS" : "FAIL",
                idx, title, r.checks, secs, r.pass ? "" : " -- ",
                r.pass ? "" : r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  };

  double t0 = now_seconds();
  CriterionResult r1, r2, r3, r4, r10;
  const std::vector<FixtureRun> runs = run_fixture_suite(r1);
  criterion_1(runs, r1);
  report(1, "oracle equivalence at convergence", r1, now_seconds() - t0);

  t0 = now_seconds();
  criterion_2(runs, r2);
  report(2, "monotone decrease of path lengths", r2, now_seconds() - t0);

  t0 = now_seconds();
  criterion_3(runs, r3);
  report(3, "one-sided drift of shooting parameters", r3, now_seconds() - t0);

  t0 = now_seconds();
  criterion_4(runs, r4);
  report(4, "angle-form and shift-form stop tests agree", r4, now_seconds() - t0);

  t0 = now_seconds();
  CriterionResult r5;
  criterion_5(r5);
  report(5, "funnel engine matches the visibility-graph oracle", r5, now_seconds() - t0);

  t0 = now_seconds();
  CriterionResult r6;
  criterion_6(r6);
  report(6, "convex-polygon ropes are exact boundary chains", r6, now_seconds() - t0);

  t0 = now_seconds();
  CriterionResult r7;
  criterion_7(r7);
  report(7, "tolerance sweep reproduces the length/runtime pattern", r7, now_seconds() - t0);

  t0 = now_seconds();
  CriterionResult r8;
  criterion_8(r8);
  report(8, "per-iteration time scales at most linearly", r8, now_seconds() - t0);

  t0 = now_seconds();
  CriterionResult r9;
  criterion_9(r9);
  report(9, "converged ropes are rectangle-independent", r9, now_seconds() - t0);

  t0 = now_seconds();
  criterion_10(runs, r10);
  report(10, "ropes avoid B1 except at the endpoints", r10, now_seconds() - t0);

  return failures == 0 ? 0 : 1;
}
