#include "rkmk/actions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rkmk {

namespace {

void check_unit(const Vec3& q, const char* who) {
  if (!q.allFinite() || std::abs(q.norm() - 1.0) > kUnitTolerance) {
    throw std::invalid_argument(std::string(who) + ": q is not a unit vector (|q| = " +
                                std::to_string(q.norm()) + ")");
  }
}

void check_lengths(std::size_t a, std::size_t b, const char* who) {
  if (a != b) {
    throw std::invalid_argument(std::string(who) + ": length mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

SpherePoint::SpherePoint(const Vec3& q) : q_(q) { check_unit(q, "SpherePoint"); }

TangentSpherePoint::TangentSpherePoint(const Vec3& q, const Vec3& w) : q_(q), w_(w) {
  check_unit(q, "TangentSpherePoint");
  if (!w.allFinite() || std::abs(q.dot(w)) > kTangencyTolerance) {
    throw std::invalid_argument("TangentSpherePoint: w is not tangent at q (q.w = " +
                                std::to_string(q.dot(w)) + ")");
  }
}

SpherePoint act_s2(const Rotation3& r, const SpherePoint& p) {
  return SpherePoint::unchecked(r * p.q());
}

TangentSpherePoint act_ts2(const Se3Group& g, const TangentSpherePoint& m) {
  const Vec3 rq = g.rot * m.q();
  return TangentSpherePoint::unchecked(rq, g.rot * m.w() + g.trans.cross(rq));
}

ProductTangentState act_product(const ProductGroup& g, const ProductTangentState& m) {
  check_lengths(g.size(), m.size(), "act_product");
  ProductTangentState out;
  out.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.push_back(act_ts2(g[i], m[i]));
  }
  return out;
}

TangentVector generator_ts2(const Se3Algebra& a, const TangentSpherePoint& m) {
  return {a.xi.cross(m.q()), a.xi.cross(m.w()) + a.eta.cross(m.q())};
}

std::vector<TangentVector> generator_product(const ProductAlgebra& a, const ProductTangentState& m) {
  check_lengths(a.size(), m.size(), "generator_product");
  std::vector<TangentVector> out;
  out.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.push_back(generator_ts2(a[i], m[i]));
  }
  return out;
}

ConstraintViolation constraint_violation(const ProductTangentState& m) {
  ConstraintViolation v;
  for (const auto& p : m) {
    v.norm = std::max(v.norm, p.norm_violation());
    v.tangency = std::max(v.tangency, p.tangency_violation());
  }
  return v;
}

bool satisfies_invariants(const ProductTangentState& m) {
  const auto v = constraint_violation(m);
  return v.norm <= kUnitTolerance && v.tangency <= kTangencyTolerance;
}

}  // namespace rkmk
