#include "rkmk/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rkmk {

namespace {

// Cash-Karp 5(4).
constexpr int kStages = 6;
constexpr std::array<double, kStages> kC = {0.0, 1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0};
constexpr std::array<std::array<double, kStages>, kStages> kA = {{
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5.0, 0, 0, 0, 0, 0},
    {3.0 / 40.0, 9.0 / 40.0, 0, 0, 0, 0},
    {3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0, 0, 0, 0},
    {-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0, 0, 0},
    {1631.0 / 55296.0, 175.0 / 512.0, 575.0 / 13824.0, 44275.0 / 110592.0, 253.0 / 4096.0, 0},
}};
constexpr std::array<double, kStages> kB5 = {37.0 / 378.0, 0.0, 250.0 / 621.0,
                                             125.0 / 594.0, 0.0, 512.0 / 1771.0};
constexpr std::array<double, kStages> kB4 = {2825.0 / 27648.0, 0.0, 18575.0 / 48384.0,
                                             13525.0 / 55296.0, 277.0 / 14336.0, 1.0 / 4.0};

ProductTangentState project(const Eigen::VectorXd& x) {
  ProductTangentState out;
  out.reserve(static_cast<std::size_t>(x.size() / 6));
  for (Eigen::Index k = 0; k < x.size(); k += 6) {
    out.push_back(project_to_ts2(x.segment<3>(k), x.segment<3>(k + 3)));
  }
  return out;
}

}  // namespace

TangentSpherePoint project_to_ts2(const Vec3& q, const Vec3& w) {
  const Vec3 u = q.normalized();
  return TangentSpherePoint::unchecked(u, w - u.dot(w) * u);
}

double state_distance(const ProductTangentState& a, const ProductTangentState& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("state_distance: length mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += (a[i].q() - b[i].q()).squaredNorm() + (a[i].w() - b[i].w()).squaredNorm();
  }
  return std::sqrt(sum);
}

Trajectory<ProductTangentState> reference_solution(const PendulumParams& params,
                                                   const ProductTangentState& y0, double t0,
                                                   double T, const ReferenceOptions& options) {
  if (!(T > t0)) throw std::invalid_argument("reference_solution: need T > t0");
  if (!(options.tol > 0.0)) throw std::invalid_argument("reference_solution: tol must be > 0");

  // The ambient field only reads q and w, so off-manifold drift between
  // samples is harmless.
  const auto field = [&params](const Eigen::VectorXd& x) {
    return ambient_vector_field(params, unflatten(x));
  };

  Trajectory<ProductTangentState> out;
  out.push_back({t0, 0.0, 0.0, y0});

  Eigen::VectorXd y = flatten(y0);
  const Eigen::Index dim = y.size();
  std::array<Eigen::VectorXd, kStages> k;
  double t = t0;
  double h = std::min(options.h0, T - t0);

  while (t < T) {
    int rejects = 0;
    while (true) {
      const bool last = t + 1.01 * h >= T;
      const double h_try = last ? T - t : h;

      for (int i = 0; i < kStages; ++i) {
        Eigen::VectorXd stage = y;
        for (int j = 0; j < i; ++j) {
          if (kA[i][j] != 0.0) stage += h_try * kA[i][j] * k[j];
        }
        k[i] = field(stage);
      }
      Eigen::VectorXd y5 = y;
      Eigen::VectorXd delta = Eigen::VectorXd::Zero(dim);
      for (int i = 0; i < kStages; ++i) {
        if (kB5[i] != 0.0) y5 += h_try * kB5[i] * k[i];
        delta += h_try * (kB5[i] - kB4[i]) * k[i];
      }
      if (!y5.allFinite()) {
        throw IntegrationError("reference_solution: non-finite state at t = " + std::to_string(t));
      }

      double sq = 0.0;
      for (Eigen::Index i = 0; i < dim; ++i) {
        const double scale = options.tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])));
        sq += (delta[i] / scale) * (delta[i] / scale);
      }
      const double err = std::sqrt(sq / static_cast<double>(dim));
      const double factor =
          err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -1.0 / 5.0), 0.2, 5.0);
      h = std::clamp(h_try * factor, options.h_min, T - t0);

      if (err <= 1.0) {
        t = last ? T : t + h_try;
        y = std::move(y5);
        out.push_back({t, h_try, err, project(y)});
        break;
      }
      if (++rejects > options.max_rejects_per_step || h_try <= options.h_min) {
        throw IntegrationError("reference_solution: tolerance unreachable at t = " +
                               std::to_string(t));
      }
    }
  }
  return out;
}

}  // namespace rkmk
