#pragma once

#include "rkmk/experiment.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace rkmk {

/// Raised on any failure to write or read an output file.
class OutputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Formats with 17 significant digits (round-trips every double).
std::string format_real(double x);

/// One row per trajectory sample:
/// t,h,accepted,err_est,q1x,q1y,q1z,w1x,w1y,w1z,...,energy
void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory<ProductTangentState>& trajectory,
                          const PendulumParams& params);

/// One row per attempted step: t,h_attempted,err_est,accepted,rejects
void write_step_log_csv(const std::filesystem::path& path, const std::vector<StepRecord>& log);

/// JSON object mirroring RunReport.
std::string report_json(const RunReport& report, int indent = 2);

void write_summary(const std::filesystem::path& path, const std::string& json);

/// Files produced by write_outputs.
struct OutputPaths {
  std::vector<std::filesystem::path> trajectories;
  std::vector<std::filesystem::path> step_logs;
  std::filesystem::path summary;
};

/// simulate: trajectory.csv, steps.csv (adaptive only), summary.json
OutputPaths write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                          const RunOutcome& run);

/// compare: adaptive_trajectory.csv, adaptive_steps.csv, fixed_trajectory.csv,
/// and one summary.json holding both reports.
OutputPaths write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                          const CompareResult& result);

/// convergence: convergence.csv (h,n_steps,error) and summary.json.
OutputPaths write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                          const ConvergenceResult& result);

/// Parsed numeric CSV.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace rkmk
