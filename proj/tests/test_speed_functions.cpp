#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "hmcf/error.hpp"
#include "hmcf/speed_functions.hpp"

using hmcf::Error;
using hmcf::ErrorCode;

namespace {

// Level-set data whose tangent-plane curvatures are known: gradient along e3 with
// length g, Hessian g*diag(k1, k2, anything) rotated by Q.
struct Frame {
  Eigen::Vector3d p;
  Eigen::Matrix3d X;
};

Frame frame(double k1, double k2, double g, double normal_entry, const Eigen::Matrix3d& Q) {
  Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
  D(0, 0) = g * k1;
  D(1, 1) = g * k2;
  D(2, 2) = normal_entry;
  D(0, 2) = D(2, 0) = 0.3 * normal_entry;
  return {Q * Eigen::Vector3d(0, 0, g), Q * D * Q.transpose()};
}

Eigen::Matrix3d random_rotation(std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Matrix3d M;
  for (int i = 0; i < 9; ++i) M.data()[i] = n(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(M);
  Eigen::Matrix3d Q = qr.householderQ();
  if (Q.determinant() < 0) Q.col(0) *= -1.0;
  return Q;
}

}  // namespace

TEST_CASE("harmonic mean of principal curvatures") {
  CHECK(hmcf::kappa(1.0, 1.0) == doctest::Approx(0.5));
  CHECK(hmcf::kappa(2.0, 0.0) == doctest::Approx(0.0));
  CHECK(hmcf::kappa(3.0, -1.0) == doctest::Approx(-1.5));
  CHECK(hmcf::kappa_eps(1.0, 1.0, 0.1) == doctest::Approx(0.7));
}

TEST_CASE("kappa requires positive mean curvature") {
  try {
    hmcf::kappa(1.0, -1.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpeedUndefined);
  }
  CHECK_THROWS_AS(hmcf::kappa(-1.0, -2.0), Error);
}

TEST_CASE("modified speed branches") {
  const double d1 = 0.2;
  CHECK(hmcf::modified_speed(1.0, 0.5, d1) == doctest::Approx(0.5 / 1.5));
  CHECK(hmcf::modified_speed(1.0, -0.5, d1) == doctest::Approx(-0.5 / 0.8));
  // Continuous across the switch lambda2 = -delta1 * lambda1.
  const double below = hmcf::modified_speed(1.0, -d1 - 1e-9, d1);
  const double above = hmcf::modified_speed(1.0, -d1 + 1e-9, d1);
  CHECK(below == doctest::Approx(above).epsilon(1e-6));
  CHECK(above == doctest::Approx(-d1 / (1.0 - d1)));
}

TEST_CASE("modified speed rejects invalid input") {
  try {
    hmcf::modified_speed(0.0, -1.0, 0.2);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotMeanConvexAtScale);
  }
  CHECK_THROWS_AS(hmcf::modified_speed(1.0, 2.0, 0.2), Error);
}

TEST_CASE("switched speed is total and continuous") {
  CHECK(hmcf::switched_speed(0.0, 0.0, 0.2) == 0.0);
  CHECK(hmcf::switched_speed(-1.0, -2.0, 0.2) == doctest::Approx(-2.0 / 0.8));
  CHECK(hmcf::switched_speed(0.5, 1.0, 0.2) == doctest::Approx(hmcf::switched_speed(1.0, 0.5, 0.2)));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = u(rng), b = u(rng);
    const double s = hmcf::switched_speed(a, b, 0.3);
    const double t = hmcf::switched_speed(a + 1e-9, b - 1e-9, 0.3);
    CHECK(std::abs(s - t) < 1e-6);
  }
}

TEST_CASE("modified speed is monotone in each curvature") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 3.0);
  const double d1 = 0.25;
  for (int i = 0; i < 2000; ++i) {
    double l1 = std::abs(u(rng)) + 0.05;
    double l2 = std::min(u(rng), l1);
    const double s = hmcf::modified_speed(l1, l2, d1);
    CHECK(hmcf::modified_speed(l1 + 0.01, l2, d1) >= s - 1e-12);
    if (l2 + 0.01 <= l1) CHECK(hmcf::modified_speed(l1, l2 + 0.01, d1) >= s - 1e-12);
  }
}

TEST_CASE("modified speed is one-homogeneous and bounded by lambda1") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double l1 = std::abs(u(rng)) + 0.1;
    const double l2 = std::min(u(rng), l1);
    const double s = hmcf::modified_speed(l1, l2, 0.2);
    CHECK(hmcf::modified_speed(3.0 * l1, 3.0 * l2, 0.2) == doctest::Approx(3.0 * s));
    CHECK(s <= l1 + 1e-12);
  }
}

TEST_CASE("level-set curvatures recover the tangent eigenvalues") {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Matrix3d Q = random_rotation(rng);
    const auto fr = frame(1.3, -0.4, 2.5, 0.7, Q);
    const auto c = hmcf::levelset_curvatures(fr.p, fr.X);
    CHECK(c.lambda1 == doctest::Approx(1.3).epsilon(1e-10));
    CHECK(c.lambda2 == doctest::Approx(-0.4).epsilon(1e-10));
  }
}

TEST_CASE("level-set speed: eigen route matches trace/det route on the first branch") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double k1 = u(rng);
    const double k2 = -0.15 * k1 + 0.5 * u(rng);
    const auto fr = frame(k1, k2, u(rng), u(rng), random_rotation(rng));
    REQUIRE(hmcf::levelset_first_branch(fr.p, fr.X, 0.2));
    const double a = hmcf::levelset_speed_F1(fr.p, fr.X, 0.2);
    const double b = hmcf::levelset_speed_trace_det(fr.p, fr.X);
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("level-set speed: normal-speed invariance under rescaling and normal terms") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double k1 = std::abs(u(rng)) + 0.1;
    const double k2 = std::min(u(rng), k1);
    const auto fr = frame(k1, k2, 1.0 + std::abs(u(rng)), u(rng), random_rotation(rng));
    const double s = 0.3 + std::abs(u(rng));
    const double sigma = u(rng);
    const Eigen::Matrix3d X2 = s * fr.X + sigma * fr.p * fr.p.transpose();
    const double lhs = hmcf::levelset_speed_F1(s * fr.p, X2, 0.2);
    const double rhs = s * hmcf::levelset_speed_F1(fr.p, fr.X, 0.2);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("level-set speed rejects a vanishing gradient") {
  try {
    hmcf::levelset_speed_F1(Eigen::Vector3d::Zero(), Eigen::Matrix3d::Identity(), 0.2);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GradientDegenerate);
  }
}

TEST_CASE("flow parameters validation") {
  hmcf::FlowParams p;
  CHECK_NOTHROW(p.validate());
  p.delta1 = 1.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.epsilon = -0.1;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.dt_safety = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
}
