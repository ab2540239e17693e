#pragma once

#include "rkmk/integrator.hpp"
#include "rkmk/pendulum.hpp"

namespace rkmk {

struct ReferenceOptions {
  double tol = 1e-12;  ///< per-component mixed absolute/relative tolerance
  double h0 = 1e-4;
  double h_min = 1e-14;
  int max_rejects_per_step = 50;
};

/**
 * High-accuracy oracle for error measurements.
 *
 * Integrates the pendulum equations in ambient coordinates (R^{6N}, no group
 * structure) with the Cash-Karp 5(4) pair and local extrapolation, then
 * renormalizes each q_i and removes the normal part of w_i at every output
 * sample. The last sample sits at T exactly. Throws IntegrationError if the
 * tolerance cannot be met at h_min.
 */
Trajectory<ProductTangentState> reference_solution(const PendulumParams& params,
                                                   const ProductTangentState& y0, double t0,
                                                   double T, const ReferenceOptions& options = {});

/// Renormalizes q and projects w onto the tangent plane at q.
TangentSpherePoint project_to_ts2(const Vec3& q, const Vec3& w);

/// Euclidean distance in R^{6N}.
double state_distance(const ProductTangentState& a, const ProductTangentState& b);

}  // namespace rkmk
