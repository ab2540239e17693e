#include "rkmk/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace rkmk {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view value, int line) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError(std::string(key) + ": expected a real number, got '" + std::string(value) +
                          "'",
                      line);
  }
  return out;
}

int parse_int(std::string_view key, std::string_view value, int line) {
  int out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(value) + "'",
                      line);
  }
  return out;
}

std::vector<double> parse_list(std::string_view key, std::string_view value, int line) {
  std::vector<double> out;
  while (true) {
    const auto comma = value.find(',');
    out.push_back(parse_real(key, trim(value.substr(0, comma)), line));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Adaptive: return "adaptive";
    case Mode::Fixed: return "fixed";
    case Mode::Compare: return "compare";
    case Mode::Convergence: return "convergence";
  }
  return "?";
}

std::string_view to_string(Weights weights) {
  return weights == Weights::Main ? "main" : "auxiliary";
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value, int line) {
  if (key == "N") c.n = parse_int(key, value, line);
  else if (key == "L") c.total_length = parse_real(key, value, line);
  else if (key == "masses") {
    if (value == "uniform") c.masses.clear();
    else c.masses = parse_list(key, value, line);
  }
  else if (key == "g") c.g = parse_real(key, value, line);
  else if (key == "t0") c.t0 = parse_real(key, value, line);
  else if (key == "T") c.T = parse_real(key, value, line);
  else if (key == "tol") c.tol = parse_real(key, value, line);
  else if (key == "theta") c.theta = parse_real(key, value, line);
  else if (key == "h0") c.h0 = parse_real(key, value, line);
  else if (key == "mode") {
    if (value == "adaptive") c.mode = Mode::Adaptive;
    else if (value == "fixed") c.mode = Mode::Fixed;
    else if (value == "compare") c.mode = Mode::Compare;
    else if (value == "convergence") c.mode = Mode::Convergence;
    else throw ConfigError("mode: unknown mode '" + std::string(value) + "'", line);
  }
  else if (key == "n_steps") c.n_steps = parse_int(key, value, line);
  else if (key == "weights") {
    if (value == "main") c.weights = Weights::Main;
    else if (value == "auxiliary") c.weights = Weights::Auxiliary;
    else throw ConfigError("weights: expected 'main' or 'auxiliary'", line);
  }
  else if (key == "output_dir") c.output_dir = std::string(value);
  else if (key == "reference_tol") c.reference_tol = parse_real(key, value, line);
  else if (key == "h_min") c.h_min = parse_real(key, value, line);
  else if (key == "max_rejects") c.max_rejects = parse_int(key, value, line);
  else if (key == "growth_cap") c.growth_cap = parse_real(key, value, line);
  else if (key == "convergence_h") c.convergence_h = parse_real(key, value, line);
  else if (key == "convergence_levels") c.convergence_levels = parse_int(key, value, line);
  else throw ConfigError("unknown key '" + std::string(key) + "'", line);
}

PendulumParams ExperimentConfig::params() const {
  const double link = total_length / n;
  std::vector<double> m = masses;
  if (m.empty()) m.assign(static_cast<std::size_t>(n), 1.0 / n);
  else if (m.size() == 1) m.assign(static_cast<std::size_t>(n), masses.front());
  return PendulumParams(std::move(m), std::vector<double>(static_cast<std::size_t>(n), link), g);
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& msg) {
    throw ConfigError(key + ": " + msg, 0);
  };
  if (n < 1) fail("N", "must be >= 1");
  if (!(total_length > 0.0)) fail("L", "must be > 0");
  if (!masses.empty() && masses.size() != 1 && masses.size() != static_cast<std::size_t>(n)) {
    fail("masses", "expected 1 or N values");
  }
  for (double m : masses) {
    if (!(m > 0.0)) fail("masses", "must be > 0");
  }
  if (!(g >= 0.0)) fail("g", "must be >= 0");
  if (!(T > t0)) fail("T", "must exceed t0");
  if (!(tol > 0.0)) fail("tol", "must be > 0");
  if (!(theta > 0.0 && theta < 1.0)) fail("theta", "must lie in (0, 1)");
  if (!(h_min > 0.0)) fail("h_min", "must be > 0");
  if (h0 && !(*h0 >= h_min && *h0 <= T - t0)) fail("h0", "must lie in [h_min, T - t0]");
  if (n_steps < 1) fail("n_steps", "must be >= 1");
  if (!(reference_tol > 0.0)) fail("reference_tol", "must be > 0");
  if (max_rejects < 1) fail("max_rejects", "must be >= 1");
  if (!(growth_cap >= 1.0)) fail("growth_cap", "must be >= 1");
  if (!(convergence_h > 0.0 && convergence_h <= T - t0)) {
    fail("convergence_h", "must lie in (0, T - t0]");
  }
  if (convergence_levels < 2) fail("convergence_levels", "must be >= 2");
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected key=value, got '" + std::string(line) + "'", line_no);
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key", line_no);
    apply_setting(config, key, value, line_no);
    seen[std::string(key)] = line_no;
  }
  try {
    config.validate();
  } catch (const ConfigError& e) {
    // Attach the line of the key named in the message, when it came from the file.
    const std::string msg = e.what();
    const auto colon = msg.find(':');
    const auto it = seen.find(msg.substr(0, colon));
    throw ConfigError(msg, it == seen.end() ? 0 : it->second);
  }
  return config;
}

}  // namespace rkmk
