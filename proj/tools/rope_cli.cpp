#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>

#include "rope/fixtures.hpp"
#include "rope/report.hpp"
#include "rope/svg.hpp"

namespace {

constexpr int kExitConverged = 0;
constexpr int kExitIterationCapped = 2;
constexpr int kExitInvalidInput = 3;
constexpr int kExitNotVisible = 4;
constexpr int kExitNonMonotone = 5;

struct Options {
  std::string input;
  std::string generate;   // "family,n"
  std::string out;        // generated fixture destination
  std::uint64_t seed = 0;
  int b_index = -1;
  int a_index = -1;
  std::string ray;        // "dx,dy"
  std::size_t cuts = 8;
  double epsilon = 1e-6;
  std::size_t max_iters = 10000;
  double margin = 0.25;
  std::string sweep;      // "lo:hi"
  std::string svg_path;
  std::string report_path;
  bool oracle = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_generate(const Options& opt) {
  const auto comma = opt.generate.find(',');
  if (comma == std::string::npos) {
    std::cerr << "--generate expects family,n\n";
    return kExitInvalidInput;
  }
  const rope::FixtureFamily family =
      rope::fixture_family_from_string(opt.generate.substr(0, comma));
  const std::size_t n = std::stoul(opt.generate.substr(comma + 1));
  const rope::PolygonFile file = rope::generate_fixture(family, n, opt.seed);
  if (opt.out.empty()) {
    rope::write_polygon_file(std::cout, file);
  } else {
    rope::write_polygon_file(opt.out, file);
  }
  return 0;
}

struct Prepared {
  rope::SimplePolygon polygon;
  std::size_t b_index;
  rope::VisibilityCertificate cert;
  std::optional<std::size_t> a_index;
  std::string digest;
};

int prepare(const Options& opt, std::optional<Prepared>& out) {
  rope::PolygonFile file;
  try {
    file = rope::read_polygon_file(opt.input);
  } catch (const std::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  std::optional<rope::SimplePolygon> poly;
  try {
    poly = rope::SimplePolygon::validate(file.vertices);
  } catch (const rope::ValidationError& e) {
    std::cerr << "invalid polygon: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  // validate() may have reversed the ring; remap anchors accordingly.
  auto remap_index = [&](std::size_t idx) -> std::size_t {
    const rope::Point& target = file.vertices[idx];
    for (std::size_t i = 0; i < poly->size(); ++i) {
      if (poly->vertex(i) == target) return i;
    }
    return idx;
  };

  std::optional<std::size_t> b;
  if (opt.b_index >= 0) {
    b = static_cast<std::size_t>(opt.b_index);
  } else if (file.b_index) {
    b = *file.b_index;
  }
  if (b && *b >= poly->size()) {
    std::cerr << "invalid input: b index out of range\n";
    return kExitInvalidInput;
  }
  std::size_t b_mapped;
  if (b) {
    b_mapped = remap_index(*b);
  } else {
    // Default: a hull vertex, always visible from infinity.
    b_mapped = rope::convex_hull_indices(*poly).back();
  }

  std::optional<rope::Point> ray;
  if (!opt.ray.empty()) {
    const auto comma = opt.ray.find(',');
    if (comma == std::string::npos) {
      std::cerr << "--ray expects dx,dy\n";
      return kExitInvalidInput;
    }
    ray = rope::Point(std::stod(opt.ray.substr(0, comma)), std::stod(opt.ray.substr(comma + 1)));
  } else if (file.ray) {
    ray = file.ray;
  }

  std::optional<rope::VisibilityCertificate> cert =
      ray ? rope::visibility_with_ray(*poly, b_mapped, *ray)
          : rope::visibility_from_infinity(*poly, b_mapped);
  if (!cert) {
    std::cerr << "vertex " << b_mapped << " is not visible from infinity"
              << (ray ? " along the supplied ray" : "") << "\n";
    return kExitNotVisible;
  }

  Prepared prep{*poly, b_mapped, *cert, std::nullopt, rope::polygon_file_digest(file)};
  if (opt.a_index >= 0) {
    if (static_cast<std::size_t>(opt.a_index) >= poly->size()) {
      std::cerr << "invalid input: a index out of range\n";
      return kExitInvalidInput;
    }
    prep.a_index = remap_index(static_cast<std::size_t>(opt.a_index));
  } else if (file.a_index) {
    prep.a_index = remap_index(*file.a_index);
  }
  if (prep.a_index) {
    const std::vector<std::size_t> hull = rope::convex_hull_indices(*poly);
    if (std::find(hull.begin(), hull.end(), *prep.a_index) == hull.end()) {
      std::cerr << "invalid input: a must be a convex hull vertex\n";
      return kExitInvalidInput;
    }
  }
  out = std::move(prep);
  return 0;
}

// The rope from a to b is the suffix of the closed rope starting at the
// last visit to a.
rope::Polyline suffix_from(const rope::Polyline& rope_path, const rope::Point& a) {
  for (std::size_t i = rope_path.size(); i-- > 0;) {
    if (rope_path.vertices[i] == a) {
      std::vector<rope::Point> tail(rope_path.vertices.begin() +
                                        static_cast<std::ptrdiff_t>(i),
                                    rope_path.vertices.end());
      return rope::Polyline(std::move(tail));
    }
  }
  throw std::runtime_error("rope does not pass through the requested start vertex");
}

int run_single(const Options& opt, const Prepared& prep) {
  rope::RopeDomain domain;
  try {
    domain = rope::build_domain(prep.polygon, prep.b_index, prep.cert, opt.margin);
  } catch (const std::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  rope::Partition part;
  try {
    part = rope::make_vertical_partition(domain, opt.cuts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "cannot partition: " << e.what() << "\n";
    return kExitNonMonotone;
  }

  rope::SolverConfig config;
  config.n_cuts = opt.cuts;
  config.epsilon = opt.epsilon;
  config.max_iterations = opt.max_iters;
  config.record_history = false;

  const auto t0 = std::chrono::steady_clock::now();
  const rope::SolveResult result = rope::solve(domain, part, config);
  const double wall = seconds_since(t0);

  rope::RunReport report = rope::make_run_report(prep.digest, config, opt.seed, result, wall);
  if (prep.a_index) {
    report.final_path = suffix_from(result.rope, prep.polygon.vertex(*prep.a_index));
  }
  if (opt.oracle) {
    const rope::GeodesicPath oracle =
        rope::vg_shortest_path_on_chain(domain.chain, 0, domain.b_pos,
                                        {domain.wall_edge_b_tilde(), domain.wall_edge_b()});
    report.oracle_length = rope::polyline_length(oracle.path);
  }

  rope::print_report_table(std::cout, report);
  if (report.oracle_length) {
    const double got = rope::polyline_length(result.rope);
    std::cout << "oracle gap " << std::abs(got - *report.oracle_length) << "\n";
  }
  if (!opt.report_path.empty()) rope::write_report_json(opt.report_path, report);
  if (!opt.svg_path.empty()) rope::render_svg(opt.svg_path, domain, part, result);

  return result.status == rope::SolveStatus::converged ? kExitConverged : kExitIterationCapped;
}

int run_sweep(const Options& opt, const Prepared& prep) {
  const auto colon = opt.sweep.find(':');
  if (colon == std::string::npos) {
    std::cerr << "--sweep expects lo:hi (for example 1e0:1e-9)\n";
    return kExitInvalidInput;
  }
  const double lo = std::stod(opt.sweep.substr(0, colon));
  const double hi = std::stod(opt.sweep.substr(colon + 1));
  if (!(lo >= hi) || hi <= 0.0) {
    std::cerr << "--sweep needs lo >= hi > 0\n";
    return kExitInvalidInput;
  }

  rope::RopeDomain domain;
  rope::Partition part;
  try {
    domain = rope::build_domain(prep.polygon, prep.b_index, prep.cert, opt.margin);
    part = rope::make_vertical_partition(domain, opt.cuts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "cannot partition: " << e.what() << "\n";
    return kExitNonMonotone;
  } catch (const std::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  rope::SolverConfig config;
  config.n_cuts = opt.cuts;
  config.max_iterations = opt.max_iters;
  config.record_history = false;

  // Warm-up run, excluded from the timings.
  config.epsilon = lo;
  (void)rope::solve(domain, part, config);

  std::cout << "epsilon        iterations   runtime(s)     length\n";
  int last_status = kExitConverged;
  for (double eps = lo; eps >= hi * 0.999999; eps /= 10.0) {
    config.epsilon = eps;
    const auto t0 = std::chrono::steady_clock::now();
    const rope::SolveResult result = rope::solve(domain, part, config);
    const double wall = seconds_since(t0);
    std::printf("%-14.3e %-12zu %-14.6f %.3f\n", eps, result.iterations, wall,
                result.history.back().length);
    std::fflush(stdout);
    last_status = result.status == rope::SolveStatus::converged ? kExitConverged
                                                                : kExitIterationCapped;
  }
  return last_status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convex rope solver (multiple shooting)"};
  Options opt;

  app.add_option("--input", opt.input, "polygon file (rope-polygon v1)");
  app.add_option("--generate", opt.generate, "emit a fixture: family,n (convex|monotone|comb)");
  app.add_option("--out", opt.out, "destination for --generate (stdout when omitted)");
  app.add_option("--seed", opt.seed, "fixture generator seed");
  app.add_option("--b-index", opt.b_index, "rope endpoint b (vertex index)");
  app.add_option("--a-index", opt.a_index,
                 "rope start a (hull vertex index); omitted means the closed rope a = b");
  app.add_option("--ray", opt.ray, "explicit escape ray for b: dx,dy");
  app.add_option("--cuts", opt.cuts, "number of cutting segments N")->check(CLI::Range(1, 1 << 20));
  app.add_option("--epsilon", opt.epsilon, "stop tolerance");
  app.add_option("--max-iters", opt.max_iters, "iteration cap");
  app.add_option("--margin", opt.margin, "rectangle margin as a fraction of the bbox diagonal");
  app.add_option("--sweep", opt.sweep, "epsilon sweep lo:hi by decades");
  app.add_option("--svg", opt.svg_path, "write an SVG rendering");
  app.add_option("--report", opt.report_path, "write a JSON run report");
  app.add_flag("--oracle", opt.oracle, "also run the visibility-graph oracle and print the gap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!opt.generate.empty()) return run_generate(opt);
    if (opt.input.empty()) {
      std::cerr << "--input (or --generate) is required\n";
      return kExitInvalidInput;
    }
    std::optional<Prepared> prep;
    const int rc = prepare(opt, prep);
    if (rc != 0) return rc;
    return opt.sweep.empty() ? run_single(opt, *prep) : run_sweep(opt, *prep);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}
