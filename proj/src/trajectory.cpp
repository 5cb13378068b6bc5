#include "liequad/trajectory.hpp"

namespace liequad {

AlgebraTrajectory to_algebra_trajectory(const ComplexTrajectory& traj) {
  AlgebraTrajectory out;
  out.times = traj.times;
  out.meta = traj.meta;
  out.meta.form = SystemForm::algebra_cubic;
  out.meta.Ctilde = vertical_constant(traj.meta.C, BracketConvention{traj.meta.kappa});
  out.states.reserve(traj.states.size());
  for (const auto& s : traj.states) out.states.push_back(to_algebra(s));
  return out;
}

ComplexTrajectory to_complex_trajectory(const AlgebraTrajectory& traj) {
  ComplexTrajectory out;
  out.times = traj.times;
  out.meta = traj.meta;
  out.meta.form = SystemForm::complex_cubic;
  out.states.reserve(traj.states.size());
  for (const auto& s : traj.states) out.states.push_back(to_quadratic(s));
  return out;
}

}  // namespace liequad
