#pragma once

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "swsig/dynamics.hpp"
#include "swsig/mpc.hpp"
#include "swsig/oracle.hpp"
#include "swsig/solver.hpp"

namespace swsig {

struct ProblemFile {
  ProblemSpec spec;
  std::uint64_t seed = 0;
};

/**
 * Problem document fields: n, N, modes (N row-major n x n matrices), xi,
 * Q (matrix or "identity"), K with h or T with K (all three allowed if
 * consistent), lambda, regularizer, optional seed.
 */
ProblemFile parse_problem(const nlohmann::json& doc);
ProblemFile parse_problem_file(const std::filesystem::path& path);

/// "quadratic_concave", "pnorm:<p>", or the reference non-examples "soav" and "soav_shifted".
Regularizer regularizer_from_name(const std::string& name);
std::string regularizer_label(const Regularizer& reg);

/// CSV with header t,x1..xn,u1..uN,mode and %.12g numbers; the last sample repeats the last control.
void write_trace_csv(const MpcTrace& trace, const std::filesystem::path& path);
void write_trace_csv(const RolloutResult& rollout, const ControlSequence& u, const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::filesystem::path& path);

/// Fixed 12-significant-digit rendering used for every CSV number.
std::string format_number(double v);

struct RunInfo {
  std::string command;
  std::string regularizer;
  double lambda = 0.0;
  int steps = 0;
  double step_length = 0.0;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
};

void write_summary(std::ostream& os, const RunInfo& info, const SolveReport& report);
void write_summary(std::ostream& os, const RunInfo& info, const MpcTrace& trace);
void write_summary(std::ostream& os, const RunInfo& info, const EnumerationResult& result,
                   const std::optional<SolveReport>& solver);
void write_summary(std::ostream& os, const Assumption1Report& report);

}  // namespace swsig
