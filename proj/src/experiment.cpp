#include "rkmk/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rkmk {

namespace {

using Clock = std::chrono::steady_clock;

RunReport summarize(const std::string& label, const PendulumParams& params,
                    const Trajectory<ProductTangentState>& traj,
                    const std::vector<StepRecord>& log,
                    const ProductTangentState& reference_final) {
  RunReport r;
  r.label = label;
  r.final_state = traj.back().y;
  r.final_error = state_distance(r.final_state, reference_final);
  r.accepted = static_cast<int>(traj.size()) - 1;
  r.rejected = static_cast<int>(
      std::count_if(log.begin(), log.end(), [](const StepRecord& s) { return !s.accepted; }));

  const double e0 = energy(params, traj.front().y);
  const double scale = energy_scale(params, e0);
  double h_sum = 0.0;
  r.h_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& s = traj[k];
    const auto v = constraint_violation(s.y);
    r.max_violation.norm = std::max(r.max_violation.norm, v.norm);
    r.max_violation.tangency = std::max(r.max_violation.tangency, v.tangency);
    r.energy_drift = std::max(r.energy_drift, std::abs(energy(params, s.y) - e0) / scale);
    if (k > 0) {
      r.h_min = std::min(r.h_min, s.h);
      r.h_max = std::max(r.h_max, s.h);
      h_sum += s.h;
    }
  }
  r.h_mean = r.accepted > 0 ? h_sum / r.accepted : 0.0;
  if (r.accepted == 0) r.h_min = 0.0;
  return r;
}

ProductTangentState initial_state(const ExperimentConfig& config) {
  return horizontal_rest_state(config.n);
}

}  // namespace

ProblemDefinition make_problem(const ExperimentConfig& config) {
  config.validate();
  ProblemDefinition problem;
  problem.f = [params = config.params()](const ProductTangentState& y) {
    return vector_field_f(params, y);
  };
  problem.t0 = config.t0;
  problem.T = config.T;
  problem.y0 = initial_state(config);
  return problem;
}

StepController make_controller(const ExperimentConfig& config) {
  StepController c;
  c.tol = config.tol;
  c.theta = config.theta;
  c.h_min = config.h_min;
  c.h_max = config.T - config.t0;
  c.max_rejects_per_step = config.max_rejects;
  c.growth_cap = config.growth_cap;
  return c;
}

ProductTangentState reference_final_state(const ExperimentConfig& config) {
  config.validate();
  ReferenceOptions options;
  options.tol = config.reference_tol;
  return reference_solution(config.params(), initial_state(config), config.t0, config.T, options)
      .back()
      .y;
}

RunOutcome run_adaptive(const ExperimentConfig& config,
                        const ProductTangentState& reference_final) {
  const auto problem = make_problem(config);
  const auto start = Clock::now();
  auto result = integrate_adaptive(problem, dormand_prince_54(), make_controller(config),
                                   config.initial_step());
  const double wall = std::chrono::duration<double>(Clock::now() - start).count();

  RunOutcome out{std::move(result.trajectory), std::move(result.log), {}};
  out.report = summarize("rkmk54_adaptive", config.params(), out.trajectory, out.log,
                         reference_final);
  out.report.wall_time = wall;
  return out;
}

RunOutcome run_fixed(const ExperimentConfig& config, int n_steps, Weights weights,
                     const ProductTangentState& reference_final) {
  const auto problem = make_problem(config);
  const auto start = Clock::now();
  auto traj = integrate_fixed(problem, dormand_prince_54(), n_steps, weights);
  const double wall = std::chrono::duration<double>(Clock::now() - start).count();

  RunOutcome out{std::move(traj), {}, {}};
  out.report = summarize(weights == Weights::Main ? "rkmk5_fixed" : "rkmk4_fixed",
                         config.params(), out.trajectory, out.log, reference_final);
  out.report.wall_time = wall;
  return out;
}

CompareResult run_compare(const ExperimentConfig& config) {
  CompareResult out;
  out.reference_final = reference_final_state(config);
  out.adaptive = run_adaptive(config, out.reference_final);
  out.fixed = run_fixed(config, out.adaptive.report.accepted, Weights::Main, out.reference_final);
  return out;
}

ConvergenceResult run_convergence(const ExperimentConfig& config) {
  const auto reference = reference_final_state(config);
  ConvergenceResult out;
  out.weights = config.weights;
  std::vector<double> hs;
  std::vector<double> errors;
  for (int level = 0; level < config.convergence_levels; ++level) {
    const double h_target = config.convergence_h / std::pow(2.0, level);
    const int n = std::max(1, static_cast<int>(std::lround((config.T - config.t0) / h_target)));
    const auto run = run_fixed(config, n, config.weights, reference);
    const double h = (config.T - config.t0) / n;
    out.rows.push_back({h, n, run.report.final_error});
    hs.push_back(h);
    errors.push_back(run.report.final_error);
  }
  out.slope = loglog_slope(hs, errors);
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope: need at least two paired samples");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace rkmk
