#pragma once

// Normal-speed laws for harmonic mean curvature flow and its regularizations.
//
// Sign convention: a positive speed moves the surface inward along the outer
// normal, so a round sphere (kappa > 0) shrinks.

#include <Eigen/Core>

namespace hmcf {

/// Full run configuration of the flow.
struct FlowParams {
  double epsilon = 0.0;      ///< regularization weight in G/H + eps*H
  double delta1 = 0.2;       ///< switch threshold of the modified speed, in (0,1)
  double eta = 0.1;          ///< time offset of the shifted monotone quantity
  double dt_safety = 0.4;    ///< fraction of the explicit stability bound, in (0,1]
  double area_floor = 0.0;   ///< extinction threshold; 0 selects 1e-4 * initial area
  double area_floor_fraction = 1e-4;

  double y_match_fraction = 0.6;  ///< tip chart height as a fraction of max f
  double regrid_distortion = 0.1;
  double dt_min_fraction = 1e-12;  ///< step-collapse threshold relative to the predicted T
  double monotone_slack = 1e-6;    ///< relative slack for monotone monitors

  /// Throws Error(InvalidArgument) naming the first violated field.
  void validate() const;
};

/// Harmonic mean curvature G/H = l1*l2/(l1+l2). Requires l1 + l2 > 0.
double kappa(double lambda1, double lambda2);

/// Regularized speed G/H + eps*H.
double kappa_eps(double lambda1, double lambda2, double epsilon);

/// Switched speed: G/H while lambda2/lambda1 >= -delta1, lambda2/(1-delta1) otherwise.
/// Requires lambda1 >= lambda2 and lambda1 > 0.
double modified_speed(double lambda1, double lambda2, double delta1);

/// Continuous extension of modified_speed to every ordered pair (lambda1 >= lambda2),
/// including the flat point lambda1 = lambda2 = 0 where it vanishes.
double switched_speed(double lambda1, double lambda2, double delta1);

/// Ordered principal curvatures (lambda1 >= lambda2) of the level set through a point
/// with gradient p and Hessian X, oriented so that p points outward.
struct LevelSetCurvatures {
  double lambda1;
  double lambda2;
};
LevelSetCurvatures levelset_curvatures(const Eigen::Vector3d& p, const Eigen::Matrix3d& X);

/// F1(p, X) of the level-set form u_t + F1 = 0 evaluated through the eigenvalues of
/// the projected Hessian: -|p| * switched_speed(lambda1, lambda2, delta1).
double levelset_speed_F1(const Eigen::Vector3d& p, const Eigen::Matrix3d& X, double delta1);

/// Same quantity on the first branch via invariants only: -|p| * sigma2(A) / trace(A)
/// with A = P X P / |p| and P the projector onto the tangent plane.
double levelset_speed_trace_det(const Eigen::Vector3d& p, const Eigen::Matrix3d& X);

/// True when (p, X) lies on the first branch (lambda2 >= -delta1 * lambda1).
bool levelset_first_branch(const Eigen::Vector3d& p, const Eigen::Matrix3d& X, double delta1);

}  // namespace hmcf
