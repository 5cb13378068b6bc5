#pragma once

#include "liequad/trajectory.hpp"

namespace liequad {

// Third-order complex equation with parameter C.
ComplexTrajectory integrate_complex(const QuadraticState& s0, double C,
                                    std::pair<double, double> tspan,
                                    const SolverSettings& settings = {},
                                    double dt_obs = 0.01);

// Third-order coordinate equation with vertical constant Ctilde.
AlgebraTrajectory integrate_algebra(const AlgebraQuadraticState& s0, const Vec3& Ctilde,
                                    std::pair<double, double> tspan,
                                    const SolverSettings& settings = {},
                                    double dt_obs = 0.01,
                                    const BracketConvention& conv = {});

// Radial/angular form; RadialUnderflow propagates out of the right-hand side.
PolarTrajectory integrate_polar(const PolarState& s0, double C,
                                std::pair<double, double> tspan,
                                const SolverSettings& settings = {},
                                double dt_obs = 0.01);

// Second-order V'' = [V', V] + Cvec; the stored second-derivative slot is
// filled from the equation itself.
AlgebraTrajectory integrate_riemannian(const Vec3& V0, const Vec3& dV0, const Vec3& Cvec,
                                       std::pair<double, double> tspan,
                                       const SolverSettings& settings = {},
                                       double dt_obs = 0.01,
                                       const BracketConvention& conv = {});

// Solves x' = x V(t) on the velocity trajectory's grid. Each grid interval
// is covered by Magnus steps x <- x * exp_map(O) with the two-point Gauss
// quadrature plus commutator correction
//   O = (h/2)(A1 + A2) + (sqrt(3)/12) h^2 [A1, A2],
// the velocity at the quadrature nodes coming from two-point quintic
// Hermite interpolation of (V, V', V''). Substeps keep the rotation per
// step below max_step_rotation; every point is renormalized.
GroupTrajectory reconstruct_group(const AlgebraTrajectory& vel,
                                  const Quat& x0 = Quat::Identity(),
                                  double max_step_rotation = 0.1);

GroupTrajectory reconstruct_group(const ComplexTrajectory& vel,
                                  const Quat& x0 = Quat::Identity(),
                                  double max_step_rotation = 0.1);

// (w, x, y, z) -> (w, x, y) / (1 - z). Throws PoleProjection at |1 - z| <= 1e-12.
Vec3 stereographic_project(const Quat& g);

}  // namespace liequad
