#pragma once

#include "rkmk/pendulum.hpp"
#include "rkmk/tableau.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rkmk {

enum class Mode { Adaptive, Fixed, Compare, Convergence };

/// Configuration error; `line()` is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/**
 * Experiment setup. Defaults describe the pendulum benchmark: chain of total
 * length 1 split into N equal links, total mass 1 split evenly, every link
 * starting horizontal (q = e1) at rest, T = 3, tol = 1e-6.
 *
 * Recognized keys (key=value, one per line, '#' starts a comment):
 *   N, L, masses, g, t0, T, tol, theta, h0, mode, n_steps, weights,
 *   output_dir, reference_tol, h_min, max_rejects, growth_cap,
 *   convergence_h, convergence_levels
 */
struct ExperimentConfig {
  int n = 1;
  double total_length = 1.0;
  std::vector<double> masses;  ///< empty: uniform 1/N per link
  double g = 9.81;
  double t0 = 0.0;
  double T = 3.0;
  double tol = 1e-6;
  double theta = 0.9;
  std::optional<double> h0;  ///< default (T - t0) / 100
  Mode mode = Mode::Adaptive;
  int n_steps = 100;
  Weights weights = Weights::Main;
  std::string output_dir = ".";
  double reference_tol = 1e-12;
  double h_min = 1e-10;
  int max_rejects = 20;
  double growth_cap = 5.0;
  double convergence_h = 2e-2;
  int convergence_levels = 4;

  PendulumParams params() const;
  double initial_step() const { return h0.value_or((T - t0) / 100.0); }

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Parses and validates a key=value document.
ExperimentConfig parse_config(std::string_view text);

/// Sets one key on an existing config (used for CLI overrides and by the
/// parser). Throws ConfigError with the given line number.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value,
                   int line = 0);

std::string_view to_string(Mode mode);
std::string_view to_string(Weights weights);

}  // namespace rkmk
