#pragma once

#include "rkmk/config.hpp"
#include "rkmk/integrator.hpp"
#include "rkmk/pendulum.hpp"
#include "rkmk/reference.hpp"

#include <string>
#include <vector>

namespace rkmk {

/// Summary of one integration run, measured against a reference state at T.
struct RunReport {
  std::string label;
  ProductTangentState final_state;
  double final_error = 0.0;  ///< Euclidean distance in R^{6N} at T
  int accepted = 0;
  int rejected = 0;
  double h_min = 0.0;
  double h_max = 0.0;
  double h_mean = 0.0;
  ConstraintViolation max_violation;
  double energy_drift = 0.0;  ///< max |E - E0| / energy_scale
  double wall_time = 0.0;     ///< seconds
};

struct RunOutcome {
  Trajectory<ProductTangentState> trajectory;
  std::vector<StepRecord> log;  ///< empty for fixed-step runs
  RunReport report;
};

struct CompareResult {
  RunOutcome adaptive;
  RunOutcome fixed;
  ProductTangentState reference_final;
};

struct ConvergenceRow {
  double h = 0.0;
  int n_steps = 0;
  double error = 0.0;
};

struct ConvergenceResult {
  Weights weights = Weights::Main;
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;  ///< least-squares slope of log(error) against log(h)
};

/// Pendulum initial value problem described by `config`.
ProblemDefinition make_problem(const ExperimentConfig& config);

StepController make_controller(const ExperimentConfig& config);

/// Reference state at T for the configured problem.
ProductTangentState reference_final_state(const ExperimentConfig& config);

RunOutcome run_adaptive(const ExperimentConfig& config, const ProductTangentState& reference_final);

RunOutcome run_fixed(const ExperimentConfig& config, int n_steps, Weights weights,
                     const ProductTangentState& reference_final);

/// Adaptive RKMK(5,4), then order-5 fixed steps using as many steps as the
/// adaptive run accepted; both scored against one shared reference.
CompareResult run_compare(const ExperimentConfig& config);

/// Fixed-step runs with h = convergence_h / 2^k, k < convergence_levels.
ConvergenceResult run_convergence(const ExperimentConfig& config);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rkmk
