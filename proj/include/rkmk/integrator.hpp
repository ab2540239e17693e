#pragma once

#include "rkmk/actions.hpp"
#include "rkmk/algebra.hpp"
#include "rkmk/tableau.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rkmk {

/// Raised when a run cannot continue: non-finite stages or states, or a step
/// that keeps failing the tolerance at the minimum step size.
class IntegrationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/**
 * A manifold with a transitive Lie group action, seen through the algebra.
 *
 * `exp_act(a, y)` is psi(exp(a), y); `dexpinv(sigma, v)` is the truncated
 * inverse differential of exp; `axpy` and `norm` give the algebra its vector
 * space structure. `zero(y)` returns the zero element shaped like the algebra
 * at y.
 */
template <typename S>
concept HomogeneousSpace = requires(const typename S::Point& y, const typename S::Algebra& a,
                                    typename S::Algebra& acc, double s) {
  { S::zero(y) } -> std::same_as<typename S::Algebra>;
  { S::exp_act(a, y) } -> std::same_as<typename S::Point>;
  { S::dexpinv(a, a) } -> std::same_as<typename S::Algebra>;
  { S::axpy(s, a, acc) };
  { S::norm(a) } -> std::convertible_to<double>;
  { S::is_finite(a) } -> std::same_as<bool>;
  { S::is_finite(y) } -> std::same_as<bool>;
  { S::on_manifold(y) } -> std::same_as<bool>;
};

/// (TS^2)^N acted on by SE(3)^N.
struct Se3ProductSpace {
  using Point = ProductTangentState;
  using Algebra = ProductAlgebra;

  static Algebra zero(const Point& y) { return Algebra(y.size()); }
  static Point exp_act(const Algebra& a, const Point& y) { return act_product(product_exp(a), y); }
  static Algebra dexpinv(const Algebra& sigma, const Algebra& v) {
    return product_dexpinv(sigma, v, kDexpinvTerms);
  }
  static void axpy(double s, const Algebra& a, Algebra& acc) { product_axpy(s, a, acc); }
  static double norm(const Algebra& a) { return product_norm(a); }
  static bool is_finite(const Algebra& a) {
    return std::all_of(a.begin(), a.end(), [](const Se3Algebra& x) { return x.all_finite(); });
  }
  static bool is_finite(const Point& y) {
    return std::all_of(y.begin(), y.end(), [](const TangentSpherePoint& p) {
      return p.q().allFinite() && p.w().allFinite();
    });
  }
  static bool on_manifold(const Point& y) { return satisfies_invariants(y); }
};

static_assert(HomogeneousSpace<Se3ProductSpace>);

/// Autonomous initial value problem y' = psi_*(f(y))|_y on [t0, T].
template <HomogeneousSpace Space>
struct Problem {
  std::function<typename Space::Algebra(const typename Space::Point&)> f;
  double t0 = 0.0;
  double T = 1.0;
  typename Space::Point y0;
};

using ProblemDefinition = Problem<Se3ProductSpace>;

/// Step-size control parameters. The ratio h_next / h is confined to
/// [min_factor, growth_cap].
struct StepController {
  double tol = 1e-6;
  double theta = 0.9;
  double h_min = 1e-10;
  double h_max = std::numeric_limits<double>::infinity();
  int max_rejects_per_step = 20;
  double growth_cap = 5.0;
  double min_factor = 0.2;

  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;
};

struct StepRecord {
  double t = 0.0;  ///< start of the attempted step
  double h = 0.0;
  double error_estimate = 0.0;
  bool accepted = false;
  int rejects = 0;  ///< rejections preceding this attempt within the same step
};

template <typename Point>
struct TrajectorySample {
  double t = 0.0;
  double h = 0.0;  ///< size of the step that produced this sample (0 for the initial one)
  double error_estimate = 0.0;
  Point y;
};

template <typename Point>
using Trajectory = std::vector<TrajectorySample<Point>>;

template <HomogeneousSpace Space>
struct StepResult {
  typename Space::Point y_next;
  typename Space::Algebra sigma_main;
  typename Space::Algebra sigma_aux;
};

template <HomogeneousSpace Space>
struct AdaptiveResult {
  Trajectory<typename Space::Point> trajectory;
  std::vector<StepRecord> log;
};

/// Distance between the two embedded solutions in the algebra.
template <HomogeneousSpace Space>
double error_estimate(const typename Space::Algebra& sigma_main,
                      const typename Space::Algebra& sigma_aux) {
  auto diff = sigma_main;
  Space::axpy(-1.0, sigma_aux, diff);
  return Space::norm(diff);
}

inline double error_estimate(const ProductAlgebra& sigma_main, const ProductAlgebra& sigma_aux) {
  if (sigma_main.size() != sigma_aux.size()) {
    throw std::invalid_argument("error_estimate: length mismatch");
  }
  return error_estimate<Se3ProductSpace>(sigma_main, sigma_aux);
}

/// h_next = theta (tol / e)^(1 / (p_aux + 1)) h, with the ratio clamped to
/// [min_factor, growth_cap] and the result to [h_min, h_max]. e = 0 yields
/// growth_cap * h.
double propose_step(const StepController& controller, double e, double h, int p_aux);

/**
 * One RKMK step from y with step size h.
 *
 * Stage i evaluates f at psi(exp(u_i), y), u_i = h sum_j a_ij k_j, and pulls it
 * back with k_i = dexpinv(u_i, f(...)). Both weight sets are combined;
 * `propagate` selects which one advances y.
 */
template <HomogeneousSpace Space>
StepResult<Space> rkmk_step(const Problem<Space>& problem, const ButcherTableau& tableau,
                            const typename Space::Point& y, double h,
                            Weights propagate = Weights::Main) {
  using Algebra = typename Space::Algebra;
  const std::size_t s = tableau.stages();
  std::vector<Algebra> k;
  k.reserve(s);

  for (std::size_t i = 0; i < s; ++i) {
    Algebra u = Space::zero(y);
    bool moved = false;
    for (std::size_t j = 0; j < i; ++j) {
      if (tableau.a[i][j] != 0.0) {
        Space::axpy(h * tableau.a[i][j], k[j], u);
        moved = true;
      }
    }
    Algebra stage = moved ? Space::dexpinv(u, problem.f(Space::exp_act(u, y))) : problem.f(y);
    if (!Space::is_finite(stage)) {
      throw IntegrationError("rkmk_step: non-finite stage value at stage " + std::to_string(i));
    }
    k.push_back(std::move(stage));
  }

  StepResult<Space> out{y, Space::zero(y), Space::zero(y)};
  for (std::size_t i = 0; i < s; ++i) {
    if (tableau.b[i] != 0.0) Space::axpy(h * tableau.b[i], k[i], out.sigma_main);
    if (tableau.b_aux[i] != 0.0) Space::axpy(h * tableau.b_aux[i], k[i], out.sigma_aux);
  }
  out.y_next = Space::exp_act(propagate == Weights::Main ? out.sigma_main : out.sigma_aux, y);
  if (!Space::is_finite(out.y_next)) {
    throw IntegrationError("rkmk_step: non-finite state");
  }
  assert(Space::on_manifold(out.y_next));
  return out;
}

/**
 * Adaptive integration with the embedded pair of `tableau`.
 *
 * A step is accepted when its error estimate is <= tol; otherwise it is
 * retried with propose_step applied to the failed attempt. The last step is
 * shortened to land on T exactly. Every attempt is logged.
 */
template <HomogeneousSpace Space>
AdaptiveResult<Space> integrate_adaptive(const Problem<Space>& problem,
                                         const ButcherTableau& tableau,
                                         const StepController& controller, double h0) {
  controller.validate();
  const double span = problem.T - problem.t0;
  if (!(span > 0.0)) {
    throw std::invalid_argument("integrate_adaptive: need T > t0");
  }
  StepController ctl = controller;
  ctl.h_max = std::min(ctl.h_max, span);
  if (!(h0 >= ctl.h_min && h0 <= ctl.h_max)) {
    throw std::invalid_argument("integrate_adaptive: h0 outside [h_min, h_max]");
  }

  AdaptiveResult<Space> result;
  result.trajectory.push_back({problem.t0, 0.0, 0.0, problem.y0});

  double t = problem.t0;
  double h = h0;
  typename Space::Point y = problem.y0;

  while (t < problem.T) {
    int rejects = 0;
    while (true) {
      const double remaining = problem.T - t;
      const bool last = t + 1.01 * h >= problem.T;
      const double h_try = last ? remaining : h;

      auto step = rkmk_step(problem, tableau, y, h_try);
      const double e = error_estimate<Space>(step.sigma_main, step.sigma_aux);
      if (!std::isfinite(e)) {
        throw IntegrationError("integrate_adaptive: non-finite error estimate at t = " +
                               std::to_string(t));
      }
      const bool accepted = e <= ctl.tol;
      result.log.push_back({t, h_try, e, accepted, rejects});
      h = propose_step(ctl, e, h_try, tableau.order_aux);

      if (accepted) {
        t = last ? problem.T : t + h_try;
        y = std::move(step.y_next);
        result.trajectory.push_back({t, h_try, e, y});
        break;
      }
      if (++rejects > ctl.max_rejects_per_step) {
        throw IntegrationError("integrate_adaptive: tolerance unreachable at t = " +
                               std::to_string(t) + " (" + std::to_string(rejects) +
                               " consecutive rejections, h = " + std::to_string(h_try) + ")");
      }
    }
  }
  return result;
}

/// Uniform steps h = (T - t0) / n_steps with a single weight set.
template <HomogeneousSpace Space>
Trajectory<typename Space::Point> integrate_fixed(const Problem<Space>& problem,
                                                  const ButcherTableau& tableau, int n_steps,
                                                  Weights weights = Weights::Main) {
  if (n_steps < 1) {
    throw std::invalid_argument("integrate_fixed: n_steps must be >= 1");
  }
  const double h = (problem.T - problem.t0) / n_steps;
  Trajectory<typename Space::Point> out;
  out.reserve(static_cast<std::size_t>(n_steps) + 1);
  out.push_back({problem.t0, 0.0, 0.0, problem.y0});
  typename Space::Point y = problem.y0;
  for (int n = 1; n <= n_steps; ++n) {
    auto step = rkmk_step(problem, tableau, y, h, weights);
    const double e = error_estimate<Space>(step.sigma_main, step.sigma_aux);
    y = std::move(step.y_next);
    const double t = n == n_steps ? problem.T : problem.t0 + n * h;
    out.push_back({t, h, e, y});
  }
  return out;
}

}  // namespace rkmk
