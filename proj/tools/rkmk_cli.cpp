// Command-line driver for the pendulum experiments.
//
//   rkmk simulate    [--config PATH] [--N n] [--tol x] [--T x] [--output-dir DIR]
//   rkmk compare     ...
//   rkmk convergence ...

#include "rkmk/config.hpp"
#include "rkmk/experiment.hpp"
#include "rkmk/output.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

struct Overrides {
  std::string config_path;
  std::optional<int> n;
  std::optional<double> tol;
  std::optional<double> T;
  std::optional<std::string> output_dir;
  std::optional<std::string> mode;
  std::optional<int> n_steps;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "key=value configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--N", o.n, "number of pendulum links");
  cmd->add_option("--tol", o.tol, "local error tolerance");
  cmd->add_option("--T", o.T, "final time");
  cmd->add_option("--output-dir", o.output_dir, "directory for CSV and summary files");
}

rkmk::ExperimentConfig load(const Overrides& o) {
  rkmk::ExperimentConfig config;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw rkmk::ConfigError("cannot read " + o.config_path, 0);
    std::stringstream buf;
    buf << in.rdbuf();
    config = rkmk::parse_config(buf.str());
  }
  if (o.n) config.n = *o.n;
  if (o.tol) config.tol = *o.tol;
  if (o.T) config.T = *o.T;
  if (o.output_dir) config.output_dir = *o.output_dir;
  if (o.mode) rkmk::apply_setting(config, "mode", *o.mode);
  if (o.n_steps) config.n_steps = *o.n_steps;
  config.validate();
  return config;
}

void print_report(const rkmk::RunReport& r) {
  std::cout << r.label << ": accepted=" << r.accepted << " rejected=" << r.rejected
            << " final_error=" << rkmk::format_real(r.final_error)
            << " energy_drift=" << rkmk::format_real(r.energy_drift) << '\n';
}

int simulate(const Overrides& o) {
  auto config = load(o);
  if (config.mode != rkmk::Mode::Fixed) config.mode = rkmk::Mode::Adaptive;
  const auto reference = rkmk::reference_final_state(config);
  const auto run = config.mode == rkmk::Mode::Fixed
                       ? rkmk::run_fixed(config, config.n_steps, config.weights, reference)
                       : rkmk::run_adaptive(config, reference);
  rkmk::write_outputs(config.output_dir, config, run);
  print_report(run.report);
  return 0;
}

int compare(const Overrides& o) {
  auto config = load(o);
  config.mode = rkmk::Mode::Compare;
  const auto result = rkmk::run_compare(config);
  rkmk::write_outputs(config.output_dir, config, result);
  print_report(result.adaptive.report);
  print_report(result.fixed.report);
  return 0;
}

int convergence(const Overrides& o) {
  auto config = load(o);
  config.mode = rkmk::Mode::Convergence;
  const auto result = rkmk::run_convergence(config);
  rkmk::write_outputs(config.output_dir, config, result);
  for (const auto& row : result.rows) {
    std::cout << "h=" << rkmk::format_real(row.h) << " error=" << rkmk::format_real(row.error)
              << '\n';
  }
  std::cout << "slope=" << result.slope << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RKMK integrators for the N-fold 3D pendulum"};
  app.require_subcommand(1);

  Overrides sim_opts, cmp_opts, conv_opts;
  auto* sim = app.add_subcommand("simulate", "single run (adaptive by default)");
  add_common(sim, sim_opts);
  sim->add_option("--mode", sim_opts.mode, "adaptive or fixed");
  sim->add_option("--n-steps", sim_opts.n_steps, "step count for fixed mode");
  auto* cmp = app.add_subcommand("compare", "adaptive RKMK(5,4) vs fixed RKMK5 at equal steps");
  add_common(cmp, cmp_opts);
  auto* conv = app.add_subcommand("convergence", "fixed-step order study");
  add_common(conv, conv_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return simulate(sim_opts);
    if (cmp->parsed()) return compare(cmp_opts);
    if (conv->parsed()) return convergence(conv_opts);
  } catch (const rkmk::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
