#include "oracles.hpp"
#include "rkmk/algebra.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace rkmk;
using rkmk::oracle::Random;

namespace {

void expect_vec_near(const Vec3& a, const Vec3& b, double tol) {
  EXPECT_LE((a - b).norm(), tol) << "a = " << a.transpose() << ", b = " << b.transpose();
}

void expect_alg_near(const Se3Algebra& a, const Se3Algebra& b, double tol) {
  expect_vec_near(a.xi, b.xi, tol);
  expect_vec_near(a.eta, b.eta, tol);
}

}  // namespace

TEST(Hat, Examples) {
  EXPECT_EQ(hat(Vec3::Zero()), Mat3::Zero());
  EXPECT_EQ(hat(Vec3(0, 0, 1)) * Vec3(1, 0, 0), Vec3(0, 1, 0));
  // (1,2,3) x (4,5,6) = (2*6-3*5, 3*4-1*6, 1*5-2*4)
  EXPECT_EQ(hat(Vec3(1, 2, 3)) * Vec3(4, 5, 6), Vec3(-3, 6, -3));
}

TEST(Hat, SkewAndCrossProductOnRandomInputs) {
  Random rng(11);
  for (int i = 0; i < 200; ++i) {
    const Vec3 v = rng.vec(3.0);
    const Vec3 w = rng.vec(3.0);
    EXPECT_EQ(hat(v).transpose(), -hat(v));
    expect_vec_near(hat(v) * w, v.cross(w), 1e-14);
  }
}

TEST(Vee, RoundTrips) {
  EXPECT_EQ(vee(hat(Vec3(1, 2, 3))), Vec3(1, 2, 3));
  EXPECT_EQ(vee(Mat3::Zero()), Vec3::Zero());
  EXPECT_EQ(vee(hat(Vec3(-5, 0.5, 2))), Vec3(-5, 0.5, 2));
}

TEST(Vee, RejectsNonSkewInput) {
  Mat3 s = hat(Vec3(1, 2, 3));
  s(0, 1) += 1e-6;
  EXPECT_THROW(vee(s), std::invalid_argument);
  EXPECT_THROW(vee(Mat3::Identity()), std::invalid_argument);
}

TEST(Bracket, Examples) {
  const Se3Algebra a{Vec3(1, 0, 0), Vec3::Zero()};
  const Se3Algebra b{Vec3(0, 1, 0), Vec3::Zero()};
  expect_alg_near(bracket_se3(a, a), Se3Algebra{}, 0.0);
  expect_alg_near(bracket_se3(a, b), -bracket_se3(b, a), 0.0);

  const Se3Algebra c{Vec3(0, 1, 0), Vec3(0, 0, 1)};
  const Se3Algebra expected{Vec3(0, 0, 1), Vec3(0, -1, 0)};
  expect_alg_near(bracket_se3(a, c), expected, 0.0);
  expect_alg_near(oracle::matrix_bracket(a, c), expected, 1e-15);
}

TEST(Bracket, MatchesMatrixCommutatorAndIsALieBracket) {
  Random rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto a = rng.algebra();
    const auto b = rng.algebra();
    const auto c = rng.algebra();
    expect_alg_near(bracket_se3(a, b), oracle::matrix_bracket(a, b), 1e-13);
    expect_alg_near(bracket_se3(a, b) + bracket_se3(b, a), Se3Algebra{}, 1e-13);
    const auto jacobi = bracket_se3(a, bracket_se3(b, c)) + bracket_se3(b, bracket_se3(c, a)) +
                        bracket_se3(c, bracket_se3(a, b));
    expect_alg_near(jacobi, Se3Algebra{}, 1e-13);
  }
}

TEST(ExpSo3, Examples) {
  EXPECT_EQ(exp_so3(Vec3::Zero()).matrix(), Mat3::Identity());
  expect_vec_near(exp_so3(Vec3(0, 0, std::numbers::pi / 2)) * Vec3(1, 0, 0), Vec3(0, 1, 0), 1e-15);
  const Vec3 xi(0.3, -1.2, 0.7);
  EXPECT_LE(((exp_so3(xi) * exp_so3(-xi)).matrix() - Mat3::Identity()).norm(), 1e-14);
}

TEST(ExpSo3, OrthogonalWithUnitDeterminant) {
  Random rng(13);
  for (int i = 0; i < 1000; ++i) {
    const auto r = exp_so3(rng.ball(10.0));
    EXPECT_LE(r.orthogonality_error(), 1e-12);
    EXPECT_NEAR(r.matrix().determinant(), 1.0, 1e-12);
  }
}

TEST(Rotation3, FromMatrixValidates) {
  Random rng(14);
  EXPECT_NO_THROW(Rotation3::from_matrix(rng.rotation()));
  EXPECT_THROW(Rotation3::from_matrix(2.0 * Mat3::Identity()), std::invalid_argument);
  EXPECT_THROW(Rotation3::from_matrix(-Mat3::Identity()), std::invalid_argument);
}

TEST(ExpSe3, Examples) {
  const auto id = exp_se3(Se3Algebra{});
  EXPECT_EQ(id.rot.matrix(), Mat3::Identity());
  EXPECT_EQ(id.trans, Vec3::Zero());

  const auto pure = exp_se3({Vec3::Zero(), Vec3(1, 2, 3)});
  EXPECT_EQ(pure.rot.matrix(), Mat3::Identity());
  EXPECT_EQ(pure.trans, Vec3(1, 2, 3));

  const Se3Algebra a{Vec3(0.2, 0.1, -0.3), Vec3(1, 0, 2)};
  const auto g = exp_se3(a);
  const oracle::Mat4 m = oracle::expm(oracle::se3_matrix(a));
  EXPECT_LE((g.rot.matrix() - m.topLeftCorner<3, 3>()).norm(), 1e-12);
  EXPECT_LE((g.trans - m.topRightCorner<3, 1>()).norm(), 1e-12);
}

TEST(ExpSe3, MatchesMatrixExponentialOnRandomElements) {
  Random rng(15);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    // |a| <= 2 in R^6
    Eigen::Matrix<double, 6, 1> v;
    for (int k = 0; k < 6; ++k) v[k] = rng.uniform(-1.0, 1.0);
    v *= rng.uniform(0.0, 2.0) / v.norm();
    const Se3Algebra a{v.head<3>(), v.tail<3>()};
    const auto g = exp_se3(a);
    const oracle::Mat4 m = oracle::expm(oracle::se3_matrix(a));
    worst = std::max(worst, (g.rot.matrix() - m.topLeftCorner<3, 3>()).cwiseAbs().maxCoeff());
    worst = std::max(worst, (g.trans - m.topRightCorner<3, 1>()).cwiseAbs().maxCoeff());
  }
  EXPECT_LE(worst, 1e-11);
}

TEST(ExpSe3, HomomorphismAlongOneParameterSubgroup) {
  Random rng(16);
  for (int i = 0; i < 100; ++i) {
    const auto a = rng.algebra(0.7);
    const auto g1 = exp_se3(0.3 * a) * exp_se3(0.7 * a);
    const auto g2 = exp_se3(a);
    EXPECT_LE((g1.rot.matrix() - g2.rot.matrix()).norm(), 1e-14);
    EXPECT_LE((g1.trans - g2.trans).norm(), 1e-14);
  }
}

TEST(SmallAngle, BranchesAgreeAtTheSwitch) {
  Random rng(17);
  for (double theta : {0.9e-4, 1.0e-4, 1.1e-4}) {
    const auto closed = detail::exp_coefficients_closed(theta);
    const auto taylor = detail::exp_coefficients_taylor(theta);
    EXPECT_NEAR(closed.a, taylor.a, 1e-12);
    EXPECT_NEAR(closed.b, taylor.b, 1e-12);
    for (int i = 0; i < 20; ++i) {
      const Vec3 xi = theta * rng.unit();
      EXPECT_LE((detail::rodrigues(xi, closed) - detail::rodrigues(xi, taylor)).norm(), 1e-12);
      EXPECT_LE((detail::left_jacobian(xi, closed) - detail::left_jacobian(xi, taylor)).norm(),
                1e-12);
    }
  }
}

TEST(SmallAngle, TaylorBranchMatchesMatrixExponential) {
  const Se3Algebra a{Vec3(3e-5, -2e-5, 5e-5), Vec3(1, -1, 2)};
  const auto g = exp_se3(a);
  const oracle::Mat4 m = oracle::expm(oracle::se3_matrix(a));
  EXPECT_LE((g.rot.matrix() - m.topLeftCorner<3, 3>()).norm(), 1e-15);
  EXPECT_LE((g.trans - m.topRightCorner<3, 1>()).norm(), 1e-15);
}

TEST(Dexpinv, Examples) {
  const Se3Algebra v{Vec3(0, 1, 0), Vec3(1, 0, 0)};
  expect_alg_near(dexpinv_se3(Se3Algebra{}, v, 4), v, 0.0);
  const Se3Algebra sigma{Vec3(0.1, 0, 0.05), Vec3(0, 0.1, 0)};
  expect_alg_near(dexpinv_se3(sigma, sigma, 4), sigma, 1e-16);
}

TEST(Dexpinv, RejectsBadTermCount) {
  EXPECT_THROW(dexpinv_se3(Se3Algebra{}, Se3Algebra{}, 0), std::invalid_argument);
  EXPECT_THROW(dexpinv_se3(Se3Algebra{}, Se3Algebra{}, 11), std::invalid_argument);
}

TEST(Dexpinv, InvertsForwardDexpToFifthOrder) {
  const Se3Algebra sigma_hat{Vec3(0.1, 0, 0.05), Vec3(0, 0.1, 0)};
  const Se3Algebra v{Vec3(0, 1, 0), Vec3(1, 0, 0)};
  const double base = std::sqrt(sigma_hat.squared_norm());

  // Residual of dexp(dexpinv(v)) - v. With B_5 = 0 the first neglected term is
  // ad^6, so the residual falls at least as fast as |sigma|^5; the scales stay
  // where it is above roundoff.
  std::vector<double> norms;
  std::vector<double> residuals;
  for (double s : {8.0, 4.0, 2.0, 1.0}) {
    const Se3Algebra sigma = s * sigma_hat;
    const auto back = oracle::forward_dexp(sigma, dexpinv_se3(sigma, v, 4), 8);
    norms.push_back(s * base);
    residuals.push_back(std::sqrt((back - v).squared_norm()));
  }
  const double c = residuals.front() / std::pow(norms.front(), 5);
  for (std::size_t i = 0; i < norms.size(); ++i) {
    EXPECT_LE(residuals[i], c * std::pow(norms[i], 5) * (1 + 1e-9));
  }
  const double slope = std::log(residuals.front() / residuals.back()) /
                       std::log(norms.front() / norms.back());
  EXPECT_GE(slope, 4.8);

  // More terms shrink the residual.
  const Se3Algebra sigma = 4.0 * sigma_hat;
  const double r4 = std::sqrt((oracle::forward_dexp(sigma, dexpinv_se3(sigma, v, 4), 12) - v).squared_norm());
  const double r8 = std::sqrt((oracle::forward_dexp(sigma, dexpinv_se3(sigma, v, 8), 12) - v).squared_norm());
  EXPECT_LT(r8, r4);
}

TEST(Product, ExpOfZeroIsIdentity) {
  const auto g = product_exp(ProductAlgebra(4));
  ASSERT_EQ(g.size(), 4u);
  for (const auto& gi : g) {
    EXPECT_EQ(gi.rot.matrix(), Mat3::Identity());
    EXPECT_EQ(gi.trans, Vec3::Zero());
  }
}

TEST(Product, OperationsAreComponentwise) {
  Random rng(18);
  ProductAlgebra a, b, sigma, v;
  for (int i = 0; i < 3; ++i) {
    a.push_back(rng.algebra());
    b.push_back(rng.algebra());
    sigma.push_back(rng.algebra(0.2));
    v.push_back(rng.algebra());
  }
  const auto br = product_bracket(a, b);
  const auto di = product_dexpinv(sigma, v);
  const auto ex = product_exp(a);
  for (std::size_t i = 0; i < 3; ++i) {
    expect_alg_near(br[i], bracket_se3(a[i], b[i]), 0.0);
    expect_alg_near(di[i], dexpinv_se3(sigma[i], v[i], 4), 0.0);
    EXPECT_EQ(ex[i].rot.matrix(), exp_se3(a[i]).rot.matrix());
    EXPECT_EQ(ex[i].trans, exp_se3(a[i]).trans);
  }
}

TEST(Product, LengthMismatchThrows) {
  EXPECT_THROW(product_bracket(ProductAlgebra(2), ProductAlgebra(3)), std::invalid_argument);
  EXPECT_THROW(product_dexpinv(ProductAlgebra(2), ProductAlgebra(1)), std::invalid_argument);
  ProductAlgebra acc(2);
  EXPECT_THROW(product_axpy(1.0, ProductAlgebra(3), acc), std::invalid_argument);
}

TEST(Product, NormIsEuclideanInR6N) {
  ProductAlgebra a(2);
  a[0].xi = Vec3(3, 4, 0);
  a[1].eta = Vec3(0, 0, 12);
  EXPECT_DOUBLE_EQ(product_norm(a), 13.0);
}
