#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstddef>
#include <vector>

namespace rkmk {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Orthogonality and determinant tolerance for Rotation3.
inline constexpr double kRotationTolerance = 1e-12;

/// Angle below which the Rodrigues-type coefficients switch to Taylor series.
inline constexpr double kSmallAngle = 1e-4;

/// Default number of bracket terms kept in the dexp-inverse series.
inline constexpr int kDexpinvTerms = 4;

/**
 * @brief Element of SO(3) stored as a 3x3 matrix.
 *
 * Construction from an arbitrary matrix is checked (R^T R = I, det R = 1 to
 * kRotationTolerance). Products and exponentials are trusted and are not
 * re-orthonormalized.
 */
class Rotation3 {
public:
  Rotation3() : m_(Mat3::Identity()) {}

  /// Throws std::invalid_argument if `m` is not a rotation.
  static Rotation3 from_matrix(const Mat3& m);

  /// No validation; for values produced by exp_so3 and products of rotations.
  static Rotation3 unchecked(const Mat3& m) { return Rotation3(m); }

  static Rotation3 identity() { return Rotation3(); }

  const Mat3& matrix() const { return m_; }

  Rotation3 inverse() const { return Rotation3(m_.transpose()); }

  Rotation3 operator*(const Rotation3& other) const { return Rotation3(m_ * other.m_); }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

  /// Frobenius norm of R^T R - I.
  double orthogonality_error() const;

private:
  explicit Rotation3(const Mat3& m) : m_(m) {}
  Mat3 m_;
};

/// se(3) element (xi, eta): xi is the rotational part, eta the translational part.
struct Se3Algebra {
  Vec3 xi = Vec3::Zero();
  Vec3 eta = Vec3::Zero();

  Se3Algebra& operator+=(const Se3Algebra& o) {
    xi += o.xi;
    eta += o.eta;
    return *this;
  }
  Se3Algebra& operator-=(const Se3Algebra& o) {
    xi -= o.xi;
    eta -= o.eta;
    return *this;
  }
  Se3Algebra& operator*=(double s) {
    xi *= s;
    eta *= s;
    return *this;
  }
  friend Se3Algebra operator+(Se3Algebra a, const Se3Algebra& b) { return a += b; }
  friend Se3Algebra operator-(Se3Algebra a, const Se3Algebra& b) { return a -= b; }
  friend Se3Algebra operator*(double s, Se3Algebra a) { return a *= s; }
  friend Se3Algebra operator-(Se3Algebra a) { return a *= -1.0; }

  double squared_norm() const { return xi.squaredNorm() + eta.squaredNorm(); }
  bool all_finite() const { return xi.allFinite() && eta.allFinite(); }
};

/// SE(3) element (R, r) with product (R1, r1)(R2, r2) = (R1 R2, r1 + R1 r2).
struct Se3Group {
  Rotation3 rot;
  Vec3 trans = Vec3::Zero();

  static Se3Group identity() { return {}; }

  Se3Group operator*(const Se3Group& o) const { return {rot * o.rot, trans + rot * o.trans}; }
};

using ProductAlgebra = std::vector<Se3Algebra>;
using ProductGroup = std::vector<Se3Group>;

// so(3)

/// Skew matrix with hat(v) w = v x w.
Mat3 hat(const Vec3& v);

/// Inverse of hat. Throws std::invalid_argument if the symmetric part of `s`
/// has Frobenius norm above 1e-9.
Vec3 vee(const Mat3& s);

Rotation3 exp_so3(const Vec3& xi);

// se(3)

/// Lie bracket (xa x xb, xa x eb - xb x ea).
Se3Algebra bracket_se3(const Se3Algebra& a, const Se3Algebra& b);

/// Group exponential (exp_so3(xi), V(xi) eta).
Se3Group exp_se3(const Se3Algebra& a);

/**
 * @brief Truncated inverse of the right-trivialized differential of exp.
 *
 * Evaluates sum_{k=0}^{terms} B_k / k! ad_sigma^k(v) with the Bernoulli
 * numbers B_0, B_1, ... = 1, -1/2, 1/6, 0, -1/30, ... Requires
 * 1 <= terms <= 10; terms = 4 is exact through the order of a fifth-order
 * method.
 */
Se3Algebra dexpinv_se3(const Se3Algebra& sigma, const Se3Algebra& v, int terms = kDexpinvTerms);

// N-fold products. All throw std::invalid_argument on length mismatch.

ProductGroup product_exp(const ProductAlgebra& a);
ProductAlgebra product_bracket(const ProductAlgebra& a, const ProductAlgebra& b);
ProductAlgebra product_dexpinv(const ProductAlgebra& sigma, const ProductAlgebra& v,
                               int terms = kDexpinvTerms);

/// acc += s * a, componentwise.
void product_axpy(double s, const ProductAlgebra& a, ProductAlgebra& acc);

/// Euclidean norm under se(3)^N ~ R^{6N}.
double product_norm(const ProductAlgebra& a);

namespace detail {

/// Coefficients of the Rodrigues formula and of the SE(3) left Jacobian:
/// a = sin(t)/t, b = (1 - cos t)/t^2, c = (t - sin t)/t^3.
struct ExpCoefficients {
  double a;
  double b;
  double c;
};

ExpCoefficients exp_coefficients_closed(double theta);
ExpCoefficients exp_coefficients_taylor(double theta);

/// Closed form for theta >= kSmallAngle, Taylor otherwise.
inline ExpCoefficients exp_coefficients(double theta) {
  return theta < kSmallAngle ? exp_coefficients_taylor(theta) : exp_coefficients_closed(theta);
}

/// I + a hat(xi) + b hat(xi)^2 for given coefficients.
Mat3 rodrigues(const Vec3& xi, const ExpCoefficients& k);

/// I + b hat(xi) + c hat(xi)^2 for given coefficients.
Mat3 left_jacobian(const Vec3& xi, const ExpCoefficients& k);

}  // namespace detail

}  // namespace rkmk
