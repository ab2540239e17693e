#include "rkmk/pendulum.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rkmk {

PendulumParams::PendulumParams(std::vector<double> masses, std::vector<double> lengths, double g)
    : masses_(std::move(masses)), lengths_(std::move(lengths)), g_(g) {
  if (masses_.empty()) {
    throw std::invalid_argument("PendulumParams: N must be >= 1");
  }
  if (masses_.size() != lengths_.size()) {
    throw std::invalid_argument("PendulumParams: masses and lengths differ in length");
  }
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (!(masses_[i] > 0.0) || !std::isfinite(masses_[i])) {
      throw std::invalid_argument("PendulumParams: mass " + std::to_string(i + 1) +
                                  " must be positive");
    }
    if (!(lengths_[i] > 0.0) || !std::isfinite(lengths_[i])) {
      throw std::invalid_argument("PendulumParams: length " + std::to_string(i + 1) +
                                  " must be positive");
    }
  }
  if (!(g_ >= 0.0) || !std::isfinite(g_)) {
    throw std::invalid_argument("PendulumParams: gravity must be >= 0");
  }
  tail_mass_.assign(masses_.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = masses_.size(); i-- > 0;) {
    acc += masses_[i];
    tail_mass_[i] = acc;
  }
}

PendulumParams PendulumParams::uniform(int n, double total_length, double total_mass, double g) {
  if (n < 1) {
    throw std::invalid_argument("PendulumParams: N must be >= 1");
  }
  const auto count = static_cast<std::size_t>(n);
  return PendulumParams(std::vector<double>(count, total_mass / n),
                        std::vector<double>(count, total_length / n), g);
}

namespace {

void require_size(const PendulumParams& params, std::size_t n) {
  if (n != static_cast<std::size_t>(params.size())) {
    throw std::invalid_argument("pendulum: state has " + std::to_string(n) + " links, expected " +
                                std::to_string(params.size()));
  }
}

BlockMatrix3N assemble(const PendulumParams& params, const std::vector<Vec3>& q) {
  require_size(params, q.size());
  const int n = params.size();
  const auto& len = params.lengths();
  BlockMatrix3N out{n, Eigen::MatrixXd::Zero(3 * n, 3 * n)};
  std::vector<Mat3> hats;
  hats.reserve(q.size());
  for (const auto& qi : q) hats.push_back(hat(qi));

  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    out.dense.block<3, 3>(3 * i, 3 * i) =
        params.tail_mass(i) * len[ui] * len[ui] * Mat3::Identity();
    for (int j = i + 1; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const Mat3 b = params.tail_mass(j) * len[ui] * len[uj] * hats[ui].transpose() * hats[uj];
      out.dense.block<3, 3>(3 * i, 3 * j) = b;
      out.dense.block<3, 3>(3 * j, 3 * i) = b.transpose();
    }
  }
  return out;
}

std::vector<Vec3> directions(const ProductTangentState& state) {
  std::vector<Vec3> q;
  q.reserve(state.size());
  for (const auto& p : state) q.push_back(p.q());
  return q;
}

}  // namespace

BlockMatrix3N mass_matrix(const PendulumParams& params, const std::vector<SpherePoint>& q) {
  std::vector<Vec3> v;
  v.reserve(q.size());
  for (const auto& p : q) v.push_back(p.q());
  return assemble(params, v);
}

BlockMatrix3N mass_matrix(const PendulumParams& params, const ProductTangentState& state) {
  return assemble(params, directions(state));
}

Mat3 coupling_block(const PendulumParams& params, int i, int j) {
  const int n = params.size();
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw std::out_of_range("coupling_block: index out of range");
  }
  const auto& len = params.lengths();
  return params.tail_mass(std::max(i, j)) * len[static_cast<std::size_t>(i)] *
         len[static_cast<std::size_t>(j)] * Mat3::Identity();
}

std::vector<Vec3> gravity_and_gyroscopic_rhs(const PendulumParams& params,
                                             const ProductTangentState& state) {
  require_size(params, state.size());
  const int n = params.size();
  const auto& len = params.lengths();
  std::vector<Vec3> r(state.size(), Vec3::Zero());
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const Vec3& qi = state[ui].q();
    Vec3 acc = Vec3::Zero();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto uj = static_cast<std::size_t>(j);
      // M_ij is a multiple of the identity.
      const double mij = params.tail_mass(std::max(i, j)) * len[ui] * len[uj];
      acc += mij * state[uj].w().squaredNorm() * qi.cross(state[uj].q());
    }
    acc -= params.tail_mass(i) * params.gravity() * len[ui] * qi.cross(kUp);
    r[ui] = acc;
  }
  return r;
}

std::vector<Vec3> solve_omega_dot(const PendulumParams& params, const ProductTangentState& state) {
  const auto r = gravity_and_gyroscopic_rhs(params, state);
  const auto m = mass_matrix(params, state);
  const Eigen::Index dim = 3 * m.n;

  Eigen::VectorXd rhs(dim);
  for (int i = 0; i < m.n; ++i) rhs.segment<3>(3 * i) = r[static_cast<std::size_t>(i)];

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m.dense);
  const double rcond = lu.rcond();
  if (!(rcond >= kMinReciprocalCondition)) {
    const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    throw SingularMatrixError("solve_omega_dot: mass matrix is singular or ill-conditioned "
                              "(condition estimate " + std::to_string(cond) + ")",
                              cond);
  }
  const Eigen::VectorXd sol = lu.solve(rhs);

  std::vector<Vec3> h(static_cast<std::size_t>(m.n));
  for (int i = 0; i < m.n; ++i) h[static_cast<std::size_t>(i)] = sol.segment<3>(3 * i);
  return h;
}

ProductAlgebra vector_field_f(const PendulumParams& params, const ProductTangentState& state) {
  const auto h = solve_omega_dot(params, state);
  ProductAlgebra f(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    f[i].xi = state[i].w();
    f[i].eta = state[i].q().cross(h[i]);
  }
  return f;
}

Eigen::VectorXd ambient_vector_field(const PendulumParams& params,
                                     const ProductTangentState& state) {
  const auto h = solve_omega_dot(params, state);
  Eigen::VectorXd out(6 * static_cast<Eigen::Index>(state.size()));
  for (std::size_t i = 0; i < state.size(); ++i) {
    const auto k = 6 * static_cast<Eigen::Index>(i);
    out.segment<3>(k) = state[i].w().cross(state[i].q());
    out.segment<3>(k + 3) = h[i];
  }
  return out;
}

double energy(const PendulumParams& params, const ProductTangentState& state) {
  require_size(params, state.size());
  const auto& len = params.lengths();
  const auto& mass = params.masses();
  Vec3 x = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  double e = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    x += len[i] * state[i].q();
    v += len[i] * state[i].w().cross(state[i].q());
    e += 0.5 * mass[i] * v.squaredNorm() + mass[i] * params.gravity() * kUp.dot(x);
  }
  return e;
}

double energy_scale(const PendulumParams& params, double reference_energy) {
  const auto& len = params.lengths();
  const auto& mass = params.masses();
  double reach = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    reach += len[i];
    scale += mass[i] * params.gravity() * reach;
  }
  return std::max(std::abs(reference_energy), scale);
}

ProductTangentState horizontal_rest_state(int n) {
  return ProductTangentState(static_cast<std::size_t>(std::max(n, 0)),
                             TangentSpherePoint(Vec3::UnitX(), Vec3::Zero()));
}

ProductTangentState hanging_state(int n) {
  return ProductTangentState(static_cast<std::size_t>(std::max(n, 0)),
                             TangentSpherePoint(-Vec3::UnitZ(), Vec3::Zero()));
}

Eigen::VectorXd flatten(const ProductTangentState& state) {
  Eigen::VectorXd x(6 * static_cast<Eigen::Index>(state.size()));
  for (std::size_t i = 0; i < state.size(); ++i) {
    const auto k = 6 * static_cast<Eigen::Index>(i);
    x.segment<3>(k) = state[i].q();
    x.segment<3>(k + 3) = state[i].w();
  }
  return x;
}

ProductTangentState unflatten(const Eigen::VectorXd& x) {
  if (x.size() % 6 != 0) {
    throw std::invalid_argument("unflatten: size is not a multiple of 6");
  }
  ProductTangentState state;
  state.reserve(static_cast<std::size_t>(x.size() / 6));
  for (Eigen::Index k = 0; k < x.size(); k += 6) {
    state.push_back(TangentSpherePoint::unchecked(x.segment<3>(k), x.segment<3>(k + 3)));
  }
  return state;
}

}  // namespace rkmk
