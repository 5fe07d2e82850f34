#include "rope/report.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include <json.hpp>

namespace rope {

RunReport make_run_report(const std::string& input_digest, const SolverConfig& config,
                          std::uint64_t seed, const SolveResult& result, double wall_seconds) {
  RunReport rep;
  rep.input_digest = input_digest;
  rep.config = config;
  rep.seed = seed;
  for (const IterationRecord& r : result.history) {
    rep.table.push_back({r.j, r.length, r.max_shift, r.violated_cuts});
  }
  rep.status = result.status;
  rep.final_path = result.rope;
  rep.wall_seconds = wall_seconds;
  return rep;
}

void print_report_table(std::ostream& out, const RunReport& report) {
  out << "input " << report.input_digest << "  cuts " << report.config.n_cuts << "  epsilon "
      << report.config.epsilon << "  max-iters " << report.config.max_iterations << "\n";
  out << std::setw(6) << "iter" << std::setw(22) << "length" << std::setw(16) << "max-shift"
      << std::setw(10) << "violated" << "\n";
  for (const RunReport::Row& row : report.table) {
    out << std::setw(6) << row.j << std::setw(22) << std::setprecision(12) << std::fixed
        << row.length << std::setw(16) << std::setprecision(3) << std::scientific
        << row.max_shift << std::setw(10) << row.violated_cuts << "\n";
    out.unsetf(std::ios::floatfield);
  }
  out << "status " << (report.status == SolveStatus::converged ? "converged" : "iteration-capped")
      << "  wall " << std::setprecision(3) << std::fixed << report.wall_seconds << "s";
  out.unsetf(std::ios::floatfield);
  if (report.oracle_length) {
    out << "  oracle-length " << std::setprecision(12) << *report.oracle_length;
  }
  out << "\n";
}

void write_report_json(std::ostream& out, const RunReport& report) {
  nlohmann::json j;
  j["input_digest"] = report.input_digest;
  j["config"] = {{"cuts", report.config.n_cuts},
                 {"epsilon", report.config.epsilon},
                 {"max_iterations", report.config.max_iterations},
                 {"seed", report.seed}};
  nlohmann::json table = nlohmann::json::array();
  for (const RunReport::Row& row : report.table) {
    table.push_back({{"j", row.j},
                     {"length", row.length},
                     {"max_shift", row.max_shift},
                     {"violated_cuts", row.violated_cuts}});
  }
  j["iterations"] = table;
  j["status"] = report.status == SolveStatus::converged ? "converged" : "iteration-capped";
  nlohmann::json path = nlohmann::json::array();
  for (const Point& p : report.final_path.vertices) {
    path.push_back({p.x, p.y});
  }
  j["final_path"] = path;
  j["wall_seconds"] = report.wall_seconds;
  if (report.oracle_length) j["oracle_length"] = *report.oracle_length;
  out << j.dump(2) << "\n";
}

void write_report_json(const std::string& path, const RunReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  write_report_json(out, report);
}

}  // namespace rope
