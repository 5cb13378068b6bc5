#pragma once

#include <string>
#include <vector>

#include "liequad/trajectory.hpp"

namespace liequad {

struct BoundViolation {
  double t = 0.0;
  std::string description;
};

struct InvariantReport {
  double c1_0 = 0.0;            // <V'',V> - 1/2 <V',V'> at the initial sample
  double c2_0 = 0.0;            // <V'',V''> + <phi',phi'> at the initial sample
  double c1_drift = 0.0;        // max |c1(t) - c1_0|
  double c2_drift = 0.0;        // max |c2(t) - c2_0|
  double lax_norm_drift = 0.0;  // max |  ||V'' + phi'|| - ||.||(t0)  |
  Vec3 lax_constant = Vec3::Zero();  // V''(t0) + phi'(t0)
  std::vector<BoundViolation> bound_violations;
};

// First integral c1 = <V'', V> - 1/2 <V', V'>.
double c1_value(const AlgebraQuadraticState& s);

// Second integral c2 = <V'', V''> + <phi', phi'> with phi' = [V', V] + Ctilde.
double c2_value(const AlgebraQuadraticState& s, const Vec3& Ctilde,
                const BracketConvention& conv = {});

// phi' = [V', V] + Ctilde (vertical for horizontal states).
Vec3 phi_dot(const AlgebraQuadraticState& s, const Vec3& Ctilde,
             const BracketConvention& conv = {});

// Evaluates c1, c2 and ||V'' + phi'|| at every sample and reports the
// maximum deviation from the initial values.
InvariantReport drift_report(const AlgebraTrajectory& traj, const Vec3& Ctilde,
                             const BracketConvention& conv = {});

// Uses the trajectory's own C (translated to the vertical constant).
InvariantReport drift_report(const ComplexTrajectory& traj);

// Pointwise checks, with tol = tol_scale * (1 + |c2_0|):
//   (a) <V'', V''> <= c2 + tol,
//   (b) <phi', phi'> <= c2 + tol,
//   (c) <V, V>(t) >= c1 tau^2 + c5 tau + c6 - tol, tau = t - t0,
// where c5 = 2 <V'(t0), V(t0)> and c6 = <V(t0), V(t0)> come from the
// identity d^2/dt^2 <V,V> = 2 c1 + 3 <V',V'> >= 2 c1.
std::vector<BoundViolation> check_growth_bounds(const AlgebraTrajectory& traj,
                                                const InvariantReport& report,
                                                const Vec3& Ctilde,
                                                const BracketConvention& conv = {},
                                                double tol_scale = 1e-6);

std::vector<BoundViolation> check_growth_bounds(const ComplexTrajectory& traj,
                                                const InvariantReport& report,
                                                double tol_scale = 1e-6);

}  // namespace liequad
