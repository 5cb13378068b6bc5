#pragma once

#include <utility>

#include "liequad/trajectory.hpp"

namespace liequad {

struct DualityReport {
  Vec3 Dtilde = Vec3::Zero();  // constant of the dual equation W'' = 2[W', W] + D
  double b = 1.0;              // reparameterization scale
  double a = 2.0;              // amplitude scale, a = 2b exactly
  Vec3 Cvec = Vec3::Zero();    // 2 b^3 D
  double max_residual_thm = 0.0;       // sup ||W'' - 2[W', W] - D||
  double max_residual_rescaled = 0.0;  // sup ||V'' - [V', V] - Cvec|| for V(t) = a W(bt)
};

struct LinearFit {
  Vec3 W0 = Vec3::Zero();
  Vec3 W1 = Vec3::Zero();
  double max_residual = 0.0;
};

// The dual curve W = -Ad(x) V with derivatives from the closed forms
//   W' = -Ad(x)(V'),  W'' = -Ad(x)(V'' + [V, V']),
// never from finite differences. x and vel must share one grid and x must
// start at the identity.
AlgebraTrajectory dual_curve(const GroupTrajectory& x, const AlgebraTrajectory& vel,
                             const BracketConvention& conv = {});

// The constant for which the dual curve of a null trajectory satisfies
// W'' = 2[W', W] + D: evaluating W'' - 2[W', W] at t = 0 with x(0) = I gives
//   D = -V''(0) + [V(0), V'(0)].
Vec3 dual_constant(const Vec3& V0, const Vec3& dV0, const Vec3& ddV0,
                   const BracketConvention& conv = {});

// sup over samples of ||W'' - 2 [W', W] - Dtilde||.
double verify_dual_equation(const AlgebraTrajectory& W, const Vec3& Dtilde,
                            const BracketConvention& conv = {});

// V(t) = a W(b t) with a = 2b satisfies V'' = [V', V] + Cvec, Cvec = 2 b^3 D.
// Realized by rescaling the grid (times / b) and the derivative slots, so no
// interpolation is involved. Requires b > 0.
std::pair<AlgebraTrajectory, Vec3> rescale_to_riemannian(const AlgebraTrajectory& W,
                                                         double b, const Vec3& Dtilde,
                                                         const BracketConvention& conv = {});

// sup over samples of ||V'' - [V', V] - Cvec||.
double riemannian_residual(const AlgebraTrajectory& traj, const Vec3& Cvec,
                           const BracketConvention& conv = {});

// For V a null second-order quadratic (V'' = [V', V]) with x' = x V, the
// curve W = -Ad(x) V is exactly affine in t. Least-squares fit of
// W(t) ~ W0 + W1 t; the residual measures integrator error only.
LinearFit null_dual_linearity(const GroupTrajectory& x, const AlgebraTrajectory& V);

}  // namespace liequad
