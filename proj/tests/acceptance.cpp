// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "oracles.hpp"
#include "rkmk/experiment.hpp"
#include "rkmk/integrator.hpp"
#include "rkmk/pendulum.hpp"
#include "rkmk/reference.hpp"

#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>

using namespace rkmk;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

ExperimentConfig benchmark(int n) {
  ExperimentConfig c;
  c.n = n;
  c.total_length = 1.0;
  c.T = 3.0;
  c.tol = 1e-6;
  return c;
}

AdaptiveResult<Se3ProductSpace> adaptive(const ExperimentConfig& c) {
  return integrate_adaptive(make_problem(c), dormand_prince_54(), make_controller(c),
                            c.initial_step());
}

Verdict geometry() {
  const auto run = adaptive(benchmark(20));
  ConstraintViolation worst;
  for (const auto& s : run.trajectory) {
    const auto v = constraint_violation(s.y);
    worst.norm = std::max(worst.norm, v.norm);
    worst.tangency = std::max(worst.tangency, v.tangency);
  }
  return {worst.norm <= 1e-12 && worst.tangency <= 1e-10,
          "N=20 steps=" + std::to_string(run.trajectory.size() - 1) +
              " max|‖q‖-1|=" + sci(worst.norm) + " max|q·w|=" + sci(worst.tangency)};
}

Verdict order() {
  ExperimentConfig c = benchmark(1);
  c.T = 1.0;
  c.masses = {1.0};
  c.reference_tol = 1e-14;
  const auto ref = reference_final_state(c);
  const std::vector<double> hs{2e-2, 1e-2, 5e-3, 2.5e-3};
  std::vector<double> main_err, aux_err;
  for (double h : hs) {
    const int n = static_cast<int>(std::lround(c.T / h));
    main_err.push_back(run_fixed(c, n, Weights::Main, ref).report.final_error);
    aux_err.push_back(run_fixed(c, n, Weights::Auxiliary, ref).report.final_error);
  }
  const double p5 = loglog_slope(hs, main_err);
  const double p4 = loglog_slope(hs, aux_err);
  return {p5 >= 4.8 && p5 <= 5.3 && p4 >= 3.8 && p4 <= 4.3,
          "slope main=" + std::to_string(p5) + " aux=" + std::to_string(p4)};
}

Verdict controller() {
  bool ok = true;
  std::ostringstream detail;
  std::size_t previous = 0;
  for (double tol : {1e-5, 1e-6, 1e-7}) {
    auto c = benchmark(2);
    c.tol = tol;
    const auto run = adaptive(c);
    int accepted = 0, rejected = 0;
    for (const auto& r : run.log) {
      if (r.accepted) {
        ok &= r.error_estimate <= tol;
        ++accepted;
      } else {
        ok &= r.error_estimate > tol;
        ++rejected;
      }
    }
    ok &= static_cast<std::size_t>(accepted) >= previous;
    previous = static_cast<std::size_t>(accepted);
    detail << "tol=" << tol << ":" << accepted << "/" << rejected << " ";
  }
  return {ok, detail.str() + "(accepted/rejected)"};
}

Verdict protocol() {
  bool counts_ok = true, errors_ok = true;
  int previous = 0;
  std::ostringstream detail;
  for (int n : {2, 8, 20}) {
    auto c = benchmark(n);
    c.reference_tol = 1e-13;
    const auto r = run_compare(c);
    const auto& a = r.adaptive.report;
    const auto& f = r.fixed.report;
    counts_ok &= a.accepted >= previous;
    previous = a.accepted;
    const bool better = a.final_error <= f.final_error;
    errors_ok &= better;
    detail << "N=" << n << " steps=" << a.accepted << " err adaptive=" << sci(a.final_error)
           << " fixed=" << sci(f.final_error) << (better ? "" : " (b fails)") << "; ";
  }
  detail << "(a) " << (counts_ok ? "pass" : "fail") << " (b) " << (errors_ok ? "pass" : "fail");
  return {counts_ok && errors_ok, detail.str()};
}

Verdict generator_identity() {
  oracle::Random rng(2024);
  double worst = 0.0;
  int states = 0;
  for (int n : {1, 3, 10}) {
    const auto params = PendulumParams::uniform(n);
    for (int k = 0; k < 1000; ++k, ++states) {
      const auto s = rng.state(n, rng.uniform(0.0, 3.0));
      const auto gen = generator_product(vector_field_f(params, s), s);
      const auto amb = ambient_vector_field(params, s);
      for (std::size_t i = 0; i < s.size(); ++i) {
        const auto o = 6 * static_cast<Eigen::Index>(i);
        worst = std::max(worst, (gen[i].first - amb.segment<3>(o)).cwiseAbs().maxCoeff());
        worst = std::max(worst, (gen[i].second - amb.segment<3>(o + 3)).cwiseAbs().maxCoeff());
      }
    }
  }
  return {worst <= 1e-11, std::to_string(states) + " states, max component gap=" + sci(worst)};
}

Verdict conservation() {
  const auto c = benchmark(2);
  const auto params = c.params();
  const auto traj = integrate_fixed(make_problem(c), dormand_prince_54(), 3000);
  const double e0 = energy(params, traj.front().y);
  double drift = 0.0;
  for (const auto& s : traj) drift = std::max(drift, std::abs(energy(params, s.y) - e0));
  drift /= energy_scale(params, e0);

  auto problem = make_problem(benchmark(3));
  problem.y0 = hanging_state(3);
  const auto hang = integrate_fixed(problem, dormand_prince_54(), 1000);
  double moved = 0.0;
  for (const auto& s : hang) moved = std::max(moved, state_distance(s.y, problem.y0));

  return {drift <= 1e-8 && moved <= 1e-14,
          "energy drift=" + sci(drift) + " hanging displacement=" + sci(moved)};
}

Verdict algebra_kernels() {
  oracle::Random rng(7);
  double exp_gap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Eigen::Matrix<double, 6, 1> v;
    for (int k = 0; k < 6; ++k) v[k] = rng.uniform(-1.0, 1.0);
    v *= (i % 10 == 0 ? rng.uniform(0.0, 1e-3) : rng.uniform(0.0, 3.0)) / v.norm();
    const Se3Algebra a{v.head<3>(), v.tail<3>()};
    const auto g = exp_se3(a);
    const oracle::Mat4 m = oracle::expm(oracle::se3_matrix(a));
    exp_gap = std::max(exp_gap, (g.rot.matrix() - m.topLeftCorner<3, 3>()).cwiseAbs().maxCoeff());
    exp_gap = std::max(exp_gap, (g.trans - m.topRightCorner<3, 1>()).cwiseAbs().maxCoeff());
  }

  // Fifth-order bound C|sigma|^5 on dexp(dexpinv(v)) - v, C from the largest scale.
  const Se3Algebra sigma_hat{Vec3(0.1, 0, 0.05), Vec3(0, 0.1, 0)};
  const Se3Algebra v{Vec3(0, 1, 0), Vec3(1, 0, 0)};
  const double base = std::sqrt(sigma_hat.squared_norm());
  std::vector<double> norms, residuals;
  for (double s : {8.0, 4.0, 2.0, 1.0}) {
    const Se3Algebra sigma = s * sigma_hat;
    const auto back = oracle::forward_dexp(sigma, dexpinv_se3(sigma, v, 4), 8);
    norms.push_back(s * base);
    residuals.push_back(std::sqrt((back - v).squared_norm()));
  }
  const double slope = loglog_slope(norms, residuals);
  const double c = residuals.front() / std::pow(norms.front(), 5);
  bool bounded = true;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    bounded &= residuals[i] <= c * std::pow(norms[i], 5) * (1 + 1e-9);
  }

  double axiom_gap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Se3Group g1{Rotation3::from_matrix(rng.rotation()), rng.vec(2.0)};
    const Se3Group g2{Rotation3::from_matrix(rng.rotation()), rng.vec(2.0)};
    const auto m = rng.tangent_point(3.0);
    const auto id = act_ts2(Se3Group::identity(), m);
    const auto lhs = act_ts2(g1, act_ts2(g2, m));
    const auto rhs = act_ts2(g1 * g2, m);
    axiom_gap = std::max({axiom_gap, (id.q() - m.q()).norm(), (id.w() - m.w()).norm(),
                          (lhs.q() - rhs.q()).norm(), (lhs.w() - rhs.w()).norm()});
  }
  return {exp_gap <= 1e-11 && bounded && slope >= 4.8 && axiom_gap <= 1e-12,
          "exp gap=" + sci(exp_gap) + " dexpinv slope=" + std::to_string(slope) +
              (bounded ? " (within C|σ|^5)" : " (exceeds C|σ|^5)") +
              " action axioms gap=" + sci(axiom_gap)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 geometry preservation", geometry},
      {"2 order verification", order},
      {"3 controller contract", controller},
      {"4 N-pendulum protocol", protocol},
      {"5 generator identity", generator_identity},
      {"6 conservation", conservation},
      {"7 algebra kernels", algebra_kernels},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s [%s] %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
