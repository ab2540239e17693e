#include "rkmk/algebra.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rkmk {

namespace {

// B_k / k! for k = 0..10.
constexpr std::array<double, 11> kBernoulliOverFactorial = {
    1.0,
    -1.0 / 2.0,
    1.0 / 12.0,
    0.0,
    -1.0 / 720.0,
    0.0,
    1.0 / 30240.0,
    0.0,
    -1.0 / 1209600.0,
    0.0,
    1.0 / 47900160.0,
};

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": length mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

Rotation3 Rotation3::from_matrix(const Mat3& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("Rotation3: non-finite entries");
  }
  const double orth = (m.transpose() * m - Mat3::Identity()).norm();
  const double det = m.determinant();
  if (orth > kRotationTolerance || std::abs(det - 1.0) > kRotationTolerance) {
    throw std::invalid_argument("Rotation3: not a rotation (|R^T R - I| = " + std::to_string(orth) +
                                ", det = " + std::to_string(det) + ")");
  }
  return Rotation3(m);
}

double Rotation3::orthogonality_error() const {
  return (m_.transpose() * m_ - Mat3::Identity()).norm();
}

Mat3 hat(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

Vec3 vee(const Mat3& s) {
  const double sym = (0.5 * (s + s.transpose())).norm();
  if (!(sym <= 1e-9)) {
    throw std::invalid_argument("vee: matrix is not skew-symmetric (|sym part| = " +
                                std::to_string(sym) + ")");
  }
  return {s(2, 1), s(0, 2), s(1, 0)};
}

namespace detail {

ExpCoefficients exp_coefficients_closed(double theta) {
  const double t2 = theta * theta;
  const double s = std::sin(theta);
  const double half = std::sin(0.5 * theta);
  // 1 - cos(t) = 2 sin^2(t/2) avoids cancellation near the switch.
  return {s / theta, 2.0 * half * half / t2, (theta - s) / (t2 * theta)};
}

ExpCoefficients exp_coefficients_taylor(double theta) {
  const double t2 = theta * theta;
  const double t4 = t2 * t2;
  return {1.0 - t2 / 6.0 + t4 / 120.0,
          0.5 - t2 / 24.0 + t4 / 720.0,
          1.0 / 6.0 - t2 / 120.0 + t4 / 5040.0};
}

Mat3 rodrigues(const Vec3& xi, const ExpCoefficients& k) {
  const Mat3 w = hat(xi);
  return Mat3::Identity() + k.a * w + k.b * (w * w);
}

Mat3 left_jacobian(const Vec3& xi, const ExpCoefficients& k) {
  const Mat3 w = hat(xi);
  return Mat3::Identity() + k.b * w + k.c * (w * w);
}

}  // namespace detail

Rotation3 exp_so3(const Vec3& xi) {
  const auto k = detail::exp_coefficients(xi.norm());
  return Rotation3::unchecked(detail::rodrigues(xi, k));
}

Se3Algebra bracket_se3(const Se3Algebra& a, const Se3Algebra& b) {
  return {a.xi.cross(b.xi), a.xi.cross(b.eta) - b.xi.cross(a.eta)};
}

Se3Group exp_se3(const Se3Algebra& a) {
  const auto k = detail::exp_coefficients(a.xi.norm());
  return {Rotation3::unchecked(detail::rodrigues(a.xi, k)), detail::left_jacobian(a.xi, k) * a.eta};
}

Se3Algebra dexpinv_se3(const Se3Algebra& sigma, const Se3Algebra& v, int terms) {
  if (terms < 1 || terms >= static_cast<int>(kBernoulliOverFactorial.size())) {
    throw std::invalid_argument("dexpinv_se3: terms must be in [1, 10], got " +
                                std::to_string(terms));
  }
  Se3Algebra result = v;
  Se3Algebra ad_k = v;
  for (int k = 1; k <= terms; ++k) {
    ad_k = bracket_se3(sigma, ad_k);
    const double coeff = kBernoulliOverFactorial[static_cast<std::size_t>(k)];
    if (coeff != 0.0) {
      result += coeff * ad_k;
    }
  }
  return result;
}

ProductGroup product_exp(const ProductAlgebra& a) {
  ProductGroup out;
  out.reserve(a.size());
  for (const auto& ai : a) {
    out.push_back(exp_se3(ai));
  }
  return out;
}

ProductAlgebra product_bracket(const ProductAlgebra& a, const ProductAlgebra& b) {
  require_same_length(a.size(), b.size(), "product_bracket");
  ProductAlgebra out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = bracket_se3(a[i], b[i]);
  }
  return out;
}

ProductAlgebra product_dexpinv(const ProductAlgebra& sigma, const ProductAlgebra& v, int terms) {
  require_same_length(sigma.size(), v.size(), "product_dexpinv");
  ProductAlgebra out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = dexpinv_se3(sigma[i], v[i], terms);
  }
  return out;
}

void product_axpy(double s, const ProductAlgebra& a, ProductAlgebra& acc) {
  require_same_length(a.size(), acc.size(), "product_axpy");
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc[i].xi += s * a[i].xi;
    acc[i].eta += s * a[i].eta;
  }
}

double product_norm(const ProductAlgebra& a) {
  double sum = 0.0;
  for (const auto& ai : a) {
    sum += ai.squared_norm();
  }
  return std::sqrt(sum);
}

}  // namespace rkmk
