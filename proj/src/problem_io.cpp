#include "swsig/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "swsig/errors.hpp"
#include "swsig/simplex.hpp"

namespace swsig {

using nlohmann::json;

namespace {

const json& require(const json& doc, const char* field) {
  if (!doc.contains(field)) throw ValidationError(std::string("missing field '") + field + "'");
  return doc.at(field);
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ValidationError("field '" + field + "' must be a number");
  return v.get<double>();
}

int as_positive_int(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ValidationError("field '" + field + "' must be a positive integer");
  return static_cast<int>(v.get<long long>());
}

Vector as_vector(const json& v, int n, const std::string& field) {
  if (!v.is_array()) throw ValidationError("field '" + field + "' must be an array");
  if (static_cast<int>(v.size()) != n)
    throw DimensionError("field '" + field + "' must have length " + std::to_string(n));
  Vector out(n);
  for (int i = 0; i < n; ++i) out[i] = as_number(v[static_cast<std::size_t>(i)], field);
  return out;
}

Matrix as_matrix(const json& v, int n, const std::string& field) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    throw DimensionError("field '" + field + "' must have " + std::to_string(n) + " rows");
  Matrix out(n, n);
  for (int r = 0; r < n; ++r) {
    const auto& row = v[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw DimensionError("field '" + field + "' row " + std::to_string(r + 1) + " must have " + std::to_string(n) +
                           " entries");
    for (int c = 0; c < n; ++c) out(r, c) = as_number(row[static_cast<std::size_t>(c)], field);
  }
  return out;
}

Regularizer regularizer_from_json(const json& v) {
  if (v.is_string()) return regularizer_from_name(v.get<std::string>());
  if (v.is_object()) {
    const auto type = require(v, "type");
    if (!type.is_string()) throw ValidationError("field 'regularizer.type' must be a string");
    if (type.get<std::string>() == "pnorm") return Regularizer::pnorm(as_number(require(v, "p"), "regularizer.p"));
    return regularizer_from_name(type.get<std::string>());
  }
  throw ValidationError("field 'regularizer' must be a string or an object");
}

}  // namespace

Regularizer regularizer_from_name(const std::string& name) {
  if (name == "quadratic_concave" || name == "l1-l2") return Regularizer::quadratic_concave();
  if (name.rfind("pnorm:", 0) == 0) {
    double p = 0.0;
    try {
      std::size_t used = 0;
      p = std::stod(name.substr(6), &used);
      if (used != name.size() - 6) throw std::invalid_argument(name);
    } catch (const std::exception&) {
      throw ValidationError("cannot parse exponent in regularizer '" + name + "'");
    }
    return Regularizer::pnorm(p);
  }
  if (name == "soav")
    return Regularizer::custom(
        "soav", [](double u) { return std::abs(u) + std::abs(1.0 - u); },
        [](double u) { return (u > 0 ? 1.0 : -1.0) - (u < 1 ? 1.0 : -1.0); });
  if (name == "soav_shifted")
    return Regularizer::custom(
        "soav_shifted", [](double u) { return std::abs(u) + std::abs(1.0 - u) - 1.0; },
        [](double u) { return (u > 0 ? 1.0 : -1.0) - (u < 1 ? 1.0 : -1.0); });
  throw ValidationError("unknown regularizer '" + name + "'");
}

std::string regularizer_label(const Regularizer& reg) {
  if (reg.kind() == RegularizerKind::PNorm) return "pnorm:" + format_number(reg.exponent());
  return reg.name();
}

ProblemFile parse_problem(const json& doc) {
  if (!doc.is_object()) throw ValidationError("problem document must be a JSON object");
  const int n = as_positive_int(require(doc, "n"), "n");
  const int N = as_positive_int(require(doc, "N"), "N");
  if (N < 2) throw ValidationError("field 'N' must be at least 2");

  const auto& modes_json = require(doc, "modes");
  if (!modes_json.is_array() || static_cast<int>(modes_json.size()) != N)
    throw DimensionError("field 'modes' must list " + std::to_string(N) + " matrices");
  std::vector<Matrix> modes;
  for (int i = 0; i < N; ++i)
    modes.push_back(as_matrix(modes_json[static_cast<std::size_t>(i)], n, "modes[" + std::to_string(i + 1) + "]"));

  const Vector xi = as_vector(require(doc, "xi"), n, "xi");

  const auto& q_json = require(doc, "Q");
  Matrix Q;
  if (q_json.is_string()) {
    if (q_json.get<std::string>() != "identity") throw ValidationError("field 'Q' must be a matrix or \"identity\"");
    Q = Matrix::Identity(n, n);
  } else {
    Q = as_matrix(q_json, n, "Q");
  }

  const bool hasT = doc.contains("T");
  const bool hasK = doc.contains("K");
  const bool hasH = doc.contains("h");
  if (!hasK) throw ValidationError("missing field 'K' (give K with h, or K with T)");
  const int K = as_positive_int(doc.at("K"), "K");
  double h = 0.0;
  if (hasH) {
    h = as_number(doc.at("h"), "h");
    if (!(h > 0.0)) throw ValidationError("field 'h' must be positive");
    if (hasT) {
      const double T = as_number(doc.at("T"), "T");
      if (!(T > 0.0) || std::abs(T - K * h) > 1e-12 * T)
        throw ValidationError("field 'T' is inconsistent with K*h (" + format_number(K * h) + ")");
    }
  } else if (hasT) {
    const double T = as_number(doc.at("T"), "T");
    if (!(T > 0.0)) throw ValidationError("field 'T' must be positive");
    h = T / K;
  } else {
    throw ValidationError("missing field 'h' (give K with h, or K with T)");
  }

  const double lambda = as_number(require(doc, "lambda"), "lambda");
  if (!(lambda > 0.0)) throw ValidationError("field 'lambda' must be positive");
  const Regularizer reg =
      doc.contains("regularizer") ? regularizer_from_json(doc.at("regularizer")) : Regularizer::quadratic_concave();

  std::uint64_t seed = 0;
  if (doc.contains("seed")) {
    const auto& s = doc.at("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0)
      throw ValidationError("field 'seed' must be a non-negative integer");
    seed = s.get<std::uint64_t>();
  }

  try {
    return {ProblemSpec(SwitchedSystem(std::move(modes)), xi, K, h, Q, lambda, reg), seed};
  } catch (const ValidationError& e) {
    // Q definiteness and symmetry are checked by ProblemSpec itself.
    throw ValidationError(std::string("invalid problem: ") + e.what());
  }
}

ProblemFile parse_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("problem file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_problem(doc);
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void write_header(std::ostream& os, int n, int N) {
  os << 't';
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  for (int i = 1; i <= N; ++i) os << ",u" << i;
  os << ",mode\n";
}

void write_row(std::ostream& os, double t, const Eigen::Ref<const Eigen::RowVectorXd>& x,
               const Eigen::Ref<const Eigen::RowVectorXd>& u, int mode) {
  os << format_number(t);
  for (Eigen::Index i = 0; i < x.size(); ++i) os << ',' << format_number(x[i]);
  for (Eigen::Index i = 0; i < u.size(); ++i) os << ',' << format_number(u[i]);
  os << ',' << mode << '\n';
}

}  // namespace

void write_trace_csv(const MpcTrace& trace, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  const int n = static_cast<int>(trace.plant_states.cols());
  const int N = trace.applied_modes.mode_count();
  write_header(out, n, N);
  const auto steps = static_cast<Eigen::Index>(trace.applied_modes.size());
  for (Eigen::Index k = 0; k < trace.plant_states.rows(); ++k) {
    if (steps == 0) {
      write_row(out, trace.times[k], trace.plant_states.row(k), Eigen::RowVectorXd::Zero(N), 0);
      continue;
    }
    const int mode = trace.applied_modes[static_cast<std::size_t>(std::min(k, steps - 1))];
    write_row(out, trace.times[k], trace.plant_states.row(k), Eigen::RowVectorXd::Unit(N, mode), mode + 1);
  }
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_trace_csv(const RolloutResult& rollout, const ControlSequence& u, const std::filesystem::path& path) {
  const auto& states = rollout.trajectory.states;
  if (states.rows() != u.steps() + 1) throw DimensionError("trajectory and control lengths disagree");
  auto out = open_for_write(path);
  write_header(out, static_cast<int>(states.cols()), u.modes());
  for (Eigen::Index k = 0; k < states.rows(); ++k) {
    const auto row = u.values().row(std::min<Eigen::Index>(k, u.steps() - 1));
    write_row(out, rollout.trajectory.times[k], states.row(k), row, nearest_vertex(row.transpose()).mode);
  }
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  CsvTable table;
  std::string line;
  if (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

void write_run_info(std::ostream& os, const RunInfo& info) {
  os << "command: " << info.command << '\n'
     << "regularizer: " << info.regularizer << '\n'
     << "lambda: " << format_number(info.lambda) << '\n'
     << "K: " << info.steps << '\n'
     << "h: " << format_number(info.step_length) << '\n'
     << "T: " << format_number(info.steps * info.step_length) << '\n'
     << "seed: " << info.seed << '\n';
}

std::string join_modes(const ModeSequence& m) {
  std::string s;
  for (int v : m.one_based()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(v);
  }
  return s;
}

void write_solve_fields(std::ostream& os, const SolveReport& r, const std::string& prefix) {
  os << prefix << "relaxed_cost: " << format_number(r.relaxed_cost) << '\n'
     << prefix << "relaxed_terminal_cost: " << format_number(r.relaxed_terminal_cost) << '\n'
     << prefix << "rounded_terminal_cost: " << format_number(r.rounded_terminal_cost) << '\n'
     << prefix << "discreteness_residual: " << format_number(r.discreteness_residual) << '\n'
     << prefix << "discrete: " << (r.discrete ? "yes" : "no") << '\n'
     << prefix << "rounded_modes: " << join_modes(r.best_rounded) << '\n'
     << prefix << "best_restart: " << r.best_restart << '\n'
     << prefix << "iterations: " << r.total_iterations() << '\n';
}

}  // namespace

void write_summary(std::ostream& os, const RunInfo& info, const SolveReport& report) {
  write_run_info(os, info);
  write_solve_fields(os, report, "");
  int converged = 0;
  for (const auto& r : report.restarts) converged += r.converged ? 1 : 0;
  os << "restarts: " << report.restarts.size() << '\n'
     << "restarts_converged: " << converged << '\n'
     << "wall_time_s: " << format_number(info.wall_time_s) << '\n';
}

void write_summary(std::ostream& os, const RunInfo& info, const MpcTrace& trace) {
  write_run_info(os, info);
  double worst_residual = 0.0;
  long iterations = 0;
  for (const auto& s : trace.steps) {
    worst_residual = std::max(worst_residual, s.discreteness_residual);
    iterations += s.iterations;
  }
  const Eigen::Index last = trace.plant_states.rows() - 1;
  os << "sim_steps: " << trace.applied_modes.size() << '\n'
     << "initial_state_norm: " << format_number(trace.state_norms[0]) << '\n'
     << "final_state_norm: " << format_number(trace.state_norms[last]) << '\n'
     << "final_time: " << format_number(trace.times[last]) << '\n'
     << "final_terminal_cost: " << format_number(trace.steps.empty() ? 0.0 : trace.steps.back().rounded_terminal_cost)
     << '\n'
     << "discreteness_residual: " << format_number(worst_residual) << '\n'
     << "applied_modes: " << join_modes(trace.applied_modes) << '\n'
     << "iterations: " << iterations << '\n'
     << "wall_time_s: " << format_number(info.wall_time_s) << '\n';
}

void write_summary(std::ostream& os, const RunInfo& info, const EnumerationResult& result,
                   const std::optional<SolveReport>& solver) {
  write_run_info(os, info);
  os << "evaluated: " << result.evaluated << '\n'
     << "oracle_best_terminal_cost: " << format_number(result.best_terminal_cost) << '\n'
     << "oracle_best_modes: " << join_modes(result.best_modes) << '\n';
  if (solver) {
    write_solve_fields(os, *solver, "solver_");
    const double gap = solver->rounded_terminal_cost - result.best_terminal_cost;
    os << "gap: " << format_number(gap) << '\n'
       << "relative_gap: " << format_number(gap / std::max(1.0, std::abs(result.best_terminal_cost))) << '\n';
  }
  os << "wall_time_s: " << format_number(info.wall_time_s) << '\n';
}

void write_summary(std::ostream& os, const Assumption1Report& report) {
  os << "command: validate-reg\n"
     << "regularizer: " << report.regularizer << '\n'
     << "samples: " << report.samples << '\n'
     << "vanishes_at_endpoints: " << (report.vanishes_at_endpoints ? "pass" : "fail") << '\n'
     << "worst_endpoint_value: " << format_number(report.worst_endpoint_value) << '\n'
     << "positive_on_interior: " << (report.positive_on_interior ? "pass" : "fail") << '\n'
     << "min_interior_value: " << format_number(report.min_interior_value) << '\n'
     << "min_interior_point: " << format_number(report.min_interior_point) << '\n'
     << "assumption1: " << (report.passed() ? "pass" : "fail") << '\n';
}

}  // namespace swsig
