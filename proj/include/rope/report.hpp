#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rope/solver.hpp"

namespace rope {

struct RunReport {
  std::string input_digest;
  SolverConfig config;
  std::uint64_t seed = 0;

  struct Row {
    std::size_t j;
    double length;
    double max_shift;
    std::size_t violated_cuts;
  };
  std::vector<Row> table;

  SolveStatus status = SolveStatus::converged;
  Polyline final_path;
  double wall_seconds = 0.0;
  std::optional<double> oracle_length;
};

RunReport make_run_report(const std::string& input_digest, const SolverConfig& config,
                          std::uint64_t seed, const SolveResult& result, double wall_seconds);

void print_report_table(std::ostream& out, const RunReport& report);
void write_report_json(std::ostream& out, const RunReport& report);
void write_report_json(const std::string& path, const RunReport& report);

}  // namespace rope
