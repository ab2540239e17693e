#pragma once

#include "rkmk/actions.hpp"
#include "rkmk/algebra.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <vector>

namespace rkmk {

/// Chain of N massless links joined by spherical joints, the first anchored at
/// the origin, with point mass m_i at the end of link i. Gravity acts along -e3.
class PendulumParams {
public:
  /// Throws std::invalid_argument unless N >= 1, all m_i > 0, L_i > 0, g >= 0.
  PendulumParams(std::vector<double> masses, std::vector<double> lengths, double g = 9.81);

  /// N links of length total_length / N and mass total_mass / N.
  static PendulumParams uniform(int n, double total_length = 1.0, double total_mass = 1.0,
                                double g = 9.81);

  int size() const { return static_cast<int>(masses_.size()); }
  const std::vector<double>& masses() const { return masses_; }
  const std::vector<double>& lengths() const { return lengths_; }
  double gravity() const { return g_; }

  /// sum_{j >= i} m_j (0-based).
  double tail_mass(int i) const { return tail_mass_[static_cast<std::size_t>(i)]; }

private:
  std::vector<double> masses_;
  std::vector<double> lengths_;
  std::vector<double> tail_mass_;
  double g_;
};

/// The 3N x 3N mass matrix, stored dense.
struct BlockMatrix3N {
  int n = 0;
  Eigen::MatrixXd dense;

  Mat3 block(int i, int j) const { return dense.block<3, 3>(3 * i, 3 * j); }
};

/// Raised when the mass matrix is singular or too ill-conditioned to solve.
class SingularMatrixError : public std::runtime_error {
public:
  SingularMatrixError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

private:
  double condition_estimate_;
};

/// Solves are refused below this reciprocal condition estimate.
inline constexpr double kMinReciprocalCondition = 1e-13;

/// Unit gravity axis (pointing up).
inline const Vec3 kUp = Vec3::UnitZ();

// Indices below are 0-based.

/// Diagonal blocks (sum_{j>=i} m_j) L_i^2 I; off-diagonal i < j blocks
/// (sum_{k>=j} m_k) L_i L_j hat(q_i)^T hat(q_j); lower blocks are transposes.
BlockMatrix3N mass_matrix(const PendulumParams& params, const std::vector<SpherePoint>& q);
BlockMatrix3N mass_matrix(const PendulumParams& params, const ProductTangentState& state);

/// (sum_{k >= max(i,j)} m_k) L_i L_j I. Throws std::out_of_range on bad indices.
Mat3 coupling_block(const PendulumParams& params, int i, int j);

/// r_i = sum_{j != i} M_ij |w_j|^2 q_i x q_j - (sum_{j>=i} m_j) g L_i q_i x e3.
std::vector<Vec3> gravity_and_gyroscopic_rhs(const PendulumParams& params,
                                             const ProductTangentState& state);

/// Angular accelerations: solves R(q) dw = r by LU with partial pivoting.
/// Throws SingularMatrixError for degenerate configurations.
std::vector<Vec3> solve_omega_dot(const PendulumParams& params, const ProductTangentState& state);

/// f(q, w) = (w_i, q_i x h_i)_i with h = solve_omega_dot, so that the action
/// generator of f reproduces the equations of motion.
ProductAlgebra vector_field_f(const PendulumParams& params, const ProductTangentState& state);

/// (w_i x q_i, h_i)_i flattened into R^{6N}.
Eigen::VectorXd ambient_vector_field(const PendulumParams& params,
                                     const ProductTangentState& state);

/// Total energy sum_i 1/2 m_i |dx_i|^2 + m_i g e3.x_i with x_i = sum_{k<=i} L_k q_k.
double energy(const PendulumParams& params, const ProductTangentState& state);

/// Scale used to express energy drift relatively when the energy itself may
/// vanish: max(|E|, sum_i m_i g sum_{k<=i} L_k).
double energy_scale(const PendulumParams& params, double reference_energy);

/// N links at q = e1 and rest.
ProductTangentState horizontal_rest_state(int n);

/// N links hanging straight down (q = -e3) at rest.
ProductTangentState hanging_state(int n);

/// Flattens (q_i, w_i)_i into R^{6N} and back.
Eigen::VectorXd flatten(const ProductTangentState& state);
ProductTangentState unflatten(const Eigen::VectorXd& x);

}  // namespace rkmk
