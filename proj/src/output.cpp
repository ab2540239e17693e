#include "rkmk/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rkmk {

namespace fs = std::filesystem;

namespace {

std::ofstream open_for_write(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw OutputError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw OutputError("write failed for " + path.string());
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// Minimal JSON object writer with 17-digit reals.
class JsonObject {
public:
  explicit JsonObject(int indent, int depth = 0) : indent_(indent), depth_(depth) {}

  JsonObject& real(const std::string& key, double v) { return raw(key, format_real(v)); }
  JsonObject& integer(const std::string& key, long long v) { return raw(key, std::to_string(v)); }
  JsonObject& text(const std::string& key, const std::string& v) { return raw(key, quote(v)); }
  JsonObject& raw(const std::string& key, const std::string& v) {
    fields_.emplace_back(key, v);
    return *this;
  }

  std::string str() const {
    const std::string pad(static_cast<std::size_t>(indent_ * (depth_ + 1)), ' ');
    const std::string close(static_cast<std::size_t>(indent_ * depth_), ' ');
    std::string out = "{\n";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      out += pad + quote(fields_[i].first) + ": " + fields_[i].second;
      out += i + 1 < fields_.size() ? ",\n" : "\n";
    }
    return out + close + "}";
  }

private:
  int indent_;
  int depth_;
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string real_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_real(values[i]);
  }
  return out + "]";
}

std::string report_json_at(const RunReport& r, int indent, int depth) {
  std::vector<double> flat;
  flat.reserve(6 * r.final_state.size());
  for (const auto& p : r.final_state) {
    flat.insert(flat.end(), {p.q().x(), p.q().y(), p.q().z(), p.w().x(), p.w().y(), p.w().z()});
  }
  JsonObject o(indent, depth);
  o.text("label", r.label)
      .real("final_error", r.final_error)
      .integer("accepted_steps", r.accepted)
      .integer("rejected_steps", r.rejected)
      .real("h_min", r.h_min)
      .real("h_max", r.h_max)
      .real("h_mean", r.h_mean)
      .real("max_norm_violation", r.max_violation.norm)
      .real("max_tangency_violation", r.max_violation.tangency)
      .real("energy_drift", r.energy_drift)
      .real("wall_time_seconds", r.wall_time)
      .raw("final_state", real_array(flat));
  return o.str();
}

std::string config_json(const ExperimentConfig& c, int indent, int depth) {
  JsonObject o(indent, depth);
  o.integer("N", c.n)
      .real("L", c.total_length)
      .real("g", c.g)
      .real("t0", c.t0)
      .real("T", c.T)
      .real("tol", c.tol)
      .real("theta", c.theta)
      .real("h0", c.initial_step())
      .text("mode", std::string(to_string(c.mode)))
      .real("reference_tol", c.reference_tol)
      .raw("masses", real_array(c.params().masses()))
      .raw("lengths", real_array(c.params().lengths()));
  return o.str();
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trajectory_csv(const fs::path& path, const Trajectory<ProductTangentState>& trajectory,
                          const PendulumParams& params) {
  auto out = open_for_write(path);
  out << "t,h,accepted,err_est";
  for (int i = 1; i <= params.size(); ++i) {
    for (const char* c : {"q", "w"}) {
      for (const char* axis : {"x", "y", "z"}) out << ',' << c << i << axis;
    }
  }
  out << ",energy\n";
  for (const auto& s : trajectory) {
    out << format_real(s.t) << ',' << format_real(s.h) << ",1," << format_real(s.error_estimate);
    for (const auto& p : s.y) {
      for (int k = 0; k < 3; ++k) out << ',' << format_real(p.q()[k]);
      for (int k = 0; k < 3; ++k) out << ',' << format_real(p.w()[k]);
    }
    out << ',' << format_real(energy(params, s.y)) << '\n';
  }
  finish(out, path);
}

void write_step_log_csv(const fs::path& path, const std::vector<StepRecord>& log) {
  auto out = open_for_write(path);
  out << "t,h_attempted,err_est,accepted,rejects\n";
  for (const auto& s : log) {
    out << format_real(s.t) << ',' << format_real(s.h) << ',' << format_real(s.error_estimate)
        << ',' << (s.accepted ? 1 : 0) << ',' << s.rejects << '\n';
  }
  finish(out, path);
}

std::string report_json(const RunReport& report, int indent) {
  return report_json_at(report, indent, 0);
}

void write_summary(const fs::path& path, const std::string& json) {
  auto out = open_for_write(path);
  out << json << '\n';
  finish(out, path);
}

OutputPaths write_outputs(const fs::path& dir, const ExperimentConfig& config,
                          const RunOutcome& run) {
  OutputPaths paths;
  const auto params = config.params();
  paths.trajectories.push_back(dir / "trajectory.csv");
  write_trajectory_csv(paths.trajectories.back(), run.trajectory, params);
  if (!run.log.empty()) {
    paths.step_logs.push_back(dir / "steps.csv");
    write_step_log_csv(paths.step_logs.back(), run.log);
  }
  paths.summary = dir / "summary.json";
  JsonObject doc(2);
  doc.raw("config", config_json(config, 2, 1)).raw("run", report_json_at(run.report, 2, 1));
  write_summary(paths.summary, doc.str());
  return paths;
}

OutputPaths write_outputs(const fs::path& dir, const ExperimentConfig& config,
                          const CompareResult& result) {
  OutputPaths paths;
  const auto params = config.params();
  paths.trajectories = {dir / "adaptive_trajectory.csv", dir / "fixed_trajectory.csv"};
  write_trajectory_csv(paths.trajectories[0], result.adaptive.trajectory, params);
  write_trajectory_csv(paths.trajectories[1], result.fixed.trajectory, params);
  paths.step_logs.push_back(dir / "adaptive_steps.csv");
  write_step_log_csv(paths.step_logs.back(), result.adaptive.log);
  paths.summary = dir / "summary.json";
  JsonObject doc(2);
  doc.raw("config", config_json(config, 2, 1))
      .raw("adaptive", report_json_at(result.adaptive.report, 2, 1))
      .raw("fixed", report_json_at(result.fixed.report, 2, 1));
  write_summary(paths.summary, doc.str());
  return paths;
}

OutputPaths write_outputs(const fs::path& dir, const ExperimentConfig& config,
                          const ConvergenceResult& result) {
  OutputPaths paths;
  const auto table = dir / "convergence.csv";
  {
    auto out = open_for_write(table);
    out << "h,n_steps,error\n";
    for (const auto& row : result.rows) {
      out << format_real(row.h) << ',' << row.n_steps << ',' << format_real(row.error) << '\n';
    }
    finish(out, table);
  }
  paths.trajectories.push_back(table);
  paths.summary = dir / "summary.json";
  JsonObject doc(2);
  doc.raw("config", config_json(config, 2, 1))
      .text("weights", std::string(to_string(result.weights)))
      .real("slope", result.slope);
  write_summary(paths.summary, doc.str());
  return paths;
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw OutputError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw OutputError(path.string() + " is empty");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw OutputError(path.string() + ": bad number '" + cell + "'");
      }
      row.push_back(v);
    }
    if (row.size() != table.header.size()) {
      throw OutputError(path.string() + ": row width does not match header");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace rkmk
