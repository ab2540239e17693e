#pragma once

#include "rkmk/algebra.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace rkmk {

/// |‖q‖ - 1| bound enforced when constructing sphere points.
inline constexpr double kUnitTolerance = 1e-12;
/// |q·w| bound enforced when constructing tangent points.
inline constexpr double kTangencyTolerance = 1e-10;

/// Unit vector in R^3.
class SpherePoint {
public:
  /// Throws std::invalid_argument unless |‖q‖ - 1| <= kUnitTolerance.
  explicit SpherePoint(const Vec3& q);

  static SpherePoint unchecked(const Vec3& q) { return SpherePoint(q, Unchecked{}); }

  const Vec3& q() const { return q_; }

private:
  struct Unchecked {};
  SpherePoint(const Vec3& q, Unchecked) : q_(q) {}
  Vec3 q_;
};

/// Point (q, w) of TS^2: unit q and w orthogonal to q. For the pendulum, w is
/// the angular velocity of the link.
class TangentSpherePoint {
public:
  /// Throws std::invalid_argument if either invariant is violated.
  TangentSpherePoint(const Vec3& q, const Vec3& w);

  static TangentSpherePoint unchecked(const Vec3& q, const Vec3& w) {
    return TangentSpherePoint(q, w, Unchecked{});
  }

  const Vec3& q() const { return q_; }
  const Vec3& w() const { return w_; }

  double norm_violation() const { return std::abs(q_.norm() - 1.0); }
  double tangency_violation() const { return std::abs(q_.dot(w_)); }

private:
  struct Unchecked {};
  TangentSpherePoint(const Vec3& q, const Vec3& w, Unchecked) : q_(q), w_(w) {}
  Vec3 q_;
  Vec3 w_;
};

using ProductTangentState = std::vector<TangentSpherePoint>;

/// Tangent vector (dq, dw) at a point of TS^2.
using TangentVector = std::pair<Vec3, Vec3>;

SpherePoint act_s2(const Rotation3& r, const SpherePoint& p);

/// (R, r) . (q, v) = (Rq, Rv + r x Rq).
TangentSpherePoint act_ts2(const Se3Group& g, const TangentSpherePoint& m);

/// Componentwise action of SE(3)^N on (TS^2)^N.
ProductTangentState act_product(const ProductGroup& g, const ProductTangentState& m);

/// d/dt act_ts2(exp_se3(t a), m) at t = 0, i.e. (xi x q, xi x w + eta x q).
TangentVector generator_ts2(const Se3Algebra& a, const TangentSpherePoint& m);

std::vector<TangentVector> generator_product(const ProductAlgebra& a, const ProductTangentState& m);

/// Largest |‖q_i‖ - 1| and |q_i·w_i| over the components.
struct ConstraintViolation {
  double norm = 0.0;
  double tangency = 0.0;
};
ConstraintViolation constraint_violation(const ProductTangentState& m);

/// Validates every component against kUnitTolerance / kTangencyTolerance.
bool satisfies_invariants(const ProductTangentState& m);

}  // namespace rkmk
