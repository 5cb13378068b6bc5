#pragma once

#include <vector>

#include "liequad/dynamics.hpp"
#include "liequad/solver.hpp"

namespace liequad {

enum class SystemForm {
  complex_cubic,         // third-order complex equation, parameter C
  algebra_cubic,         // third-order coordinate equation, constant Ctilde
  polar_cubic,           // radial/angular form, parameter C
  riemannian_quadratic,  // second-order V'' = [V', V] + Cvec
  dual_curve,            // W-curve produced by the duality transform
};

struct TrajectoryMeta {
  SystemForm form = SystemForm::complex_cubic;
  SolverSettings solver;
  double kappa = 1.0;
  double C = 0.0;              // complex-form parameter (0 when not applicable)
  Vec3 Ctilde = Vec3::Zero();  // algebra-form constant (vertical for cubics)
  double dt_obs = 0.01;
};

struct ComplexTrajectory {
  std::vector<double> times;
  std::vector<QuadraticState> states;
  TrajectoryMeta meta;
};

struct AlgebraTrajectory {
  std::vector<double> times;
  std::vector<AlgebraQuadraticState> states;
  TrajectoryMeta meta;
};

struct PolarTrajectory {
  std::vector<double> times;
  std::vector<PolarState> states;
  TrajectoryMeta meta;
};

struct GroupTrajectory {
  std::vector<double> times;
  std::vector<Quat> points;
};

AlgebraTrajectory to_algebra_trajectory(const ComplexTrajectory& traj);

// Requires every sample horizontal.
ComplexTrajectory to_complex_trajectory(const AlgebraTrajectory& traj);

}  // namespace liequad
