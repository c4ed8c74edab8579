#include "hmcf/speed_functions.hpp"

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Geometry>

#include "hmcf/error.hpp"

namespace hmcf {

void FlowParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) fail("epsilon must be >= 0");
  if (!(delta1 > 0.0 && delta1 < 1.0)) fail("delta1 out of (0,1)");
  if (!std::isfinite(eta)) fail("eta must be finite");
  if (!(dt_safety > 0.0 && dt_safety <= 1.0)) fail("dt_safety out of (0,1]");
  if (!(area_floor >= 0.0)) fail("area_floor must be >= 0");
  if (!(area_floor_fraction > 0.0 && area_floor_fraction < 1.0)) fail("area_floor_fraction out of (0,1)");
  if (!(y_match_fraction > 0.05 && y_match_fraction < 0.9)) fail("y_match_fraction out of (0.05,0.9)");
  if (!(regrid_distortion > 0.0 && regrid_distortion < 1.0)) fail("regrid_distortion out of (0,1)");
  if (!(dt_min_fraction > 0.0)) fail("dt_min_fraction must be > 0");
  if (!(monotone_slack >= 0.0)) fail("monotone_slack must be >= 0");
}

double kappa(double lambda1, double lambda2) {
  const double H = lambda1 + lambda2;
  if (!(H > 0.0)) {
    throw Error(ErrorCode::SpeedUndefined, "H = " + std::to_string(H) + " <= 0");
  }
  return lambda1 * lambda2 / H;
}

double kappa_eps(double lambda1, double lambda2, double epsilon) {
  return kappa(lambda1, lambda2) + epsilon * (lambda1 + lambda2);
}

double switched_speed(double lambda1, double lambda2, double delta1) {
  if (lambda1 < lambda2) std::swap(lambda1, lambda2);
  if (lambda1 <= 0.0) {
    if (lambda1 == 0.0 && lambda2 == 0.0) return 0.0;
    return lambda2 / (1.0 - delta1);
  }
  if (lambda2 >= -delta1 * lambda1) {
    return lambda1 * lambda2 / (lambda1 + lambda2);
  }
  return lambda2 / (1.0 - delta1);
}

double modified_speed(double lambda1, double lambda2, double delta1) {
  if (!(lambda1 > 0.0)) {
    throw Error(ErrorCode::NotMeanConvexAtScale, "lambda1 = " + std::to_string(lambda1));
  }
  if (lambda2 > lambda1) {
    throw Error(ErrorCode::InvalidArgument, "principal curvatures must satisfy lambda1 >= lambda2");
  }
  return switched_speed(lambda1, lambda2, delta1);
}

namespace {

constexpr double kGradientFloor = 1e-12;

double checked_norm(const Eigen::Vector3d& p) {
  const double n = p.norm();
  if (!(n > kGradientFloor)) {
    throw Error(ErrorCode::GradientDegenerate, "|p| = " + std::to_string(n));
  }
  return n;
}

// A = P X P / |p| with P = I - n n^T.
Eigen::Matrix3d projected_hessian(const Eigen::Vector3d& p, const Eigen::Matrix3d& X, double pnorm) {
  const Eigen::Vector3d n = p / pnorm;
  const Eigen::Matrix3d P = Eigen::Matrix3d::Identity() - n * n.transpose();
  const Eigen::Matrix3d Xs = 0.5 * (X + X.transpose());
  return P * Xs * P / pnorm;
}

}  // namespace

LevelSetCurvatures levelset_curvatures(const Eigen::Vector3d& p, const Eigen::Matrix3d& X) {
  const double pnorm = checked_norm(p);
  const Eigen::Vector3d n = p / pnorm;

  // Orthonormal basis of the tangent plane: start from the axis least aligned with n.
  Eigen::Index k = 0;
  n.cwiseAbs().minCoeff(&k);
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  e[k] = 1.0;
  const Eigen::Vector3d e1 = (e - e.dot(n) * n).normalized();
  const Eigen::Vector3d e2 = n.cross(e1);

  const Eigen::Matrix3d A = projected_hessian(p, X, pnorm);
  const double a = e1.dot(A * e1);
  const double b = 0.5 * (e1.dot(A * e2) + e2.dot(A * e1));
  const double c = e2.dot(A * e2);
  const double mid = 0.5 * (a + c);
  const double rad = std::hypot(0.5 * (a - c), b);
  return {mid + rad, mid - rad};
}

double levelset_speed_F1(const Eigen::Vector3d& p, const Eigen::Matrix3d& X, double delta1) {
  const auto [l1, l2] = levelset_curvatures(p, X);
  return -p.norm() * switched_speed(l1, l2, delta1);
}

double levelset_speed_trace_det(const Eigen::Vector3d& p, const Eigen::Matrix3d& X) {
  const double pnorm = checked_norm(p);
  const Eigen::Matrix3d A = projected_hessian(p, X, pnorm);
  const double H = A.trace();
  if (!(H > 0.0)) {
    throw Error(ErrorCode::SpeedUndefined, "trace of projected Hessian <= 0");
  }
  const double G = 0.5 * (H * H - (A * A).trace());
  return -pnorm * G / H;
}

bool levelset_first_branch(const Eigen::Vector3d& p, const Eigen::Matrix3d& X, double delta1) {
  const auto [l1, l2] = levelset_curvatures(p, X);
  return l1 > 0.0 && l2 >= -delta1 * l1;
}

}  // namespace hmcf
