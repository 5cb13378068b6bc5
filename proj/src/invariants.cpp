#include "liequad/invariants.hpp"

#include <cmath>

namespace liequad {

double c1_value(const AlgebraQuadraticState& s) {
  return inner(s.ddV, s.V) - 0.5 * inner(s.dV, s.dV);
}

Vec3 phi_dot(const AlgebraQuadraticState& s, const Vec3& Ctilde,
             const BracketConvention& conv) {
  return bracket(s.dV, s.V, conv) + Ctilde;
}

double c2_value(const AlgebraQuadraticState& s, const Vec3& Ctilde,
                const BracketConvention& conv) {
  const Vec3 ph = phi_dot(s, Ctilde, conv);
  return inner(s.ddV, s.ddV) + inner(ph, ph);
}

InvariantReport drift_report(const AlgebraTrajectory& traj, const Vec3& Ctilde,
                             const BracketConvention& conv) {
  if (traj.states.empty()) throw InvalidArgument("drift_report: empty trajectory");

  InvariantReport rep;
  rep.c1_0 = c1_value(traj.states.front());
  rep.c2_0 = c2_value(traj.states.front(), Ctilde, conv);
  rep.lax_constant = traj.states.front().ddV + phi_dot(traj.states.front(), Ctilde, conv);
  const double lax0 = rep.lax_constant.norm();

  for (const auto& s : traj.states) {
    rep.c1_drift = std::max(rep.c1_drift, std::abs(c1_value(s) - rep.c1_0));
    rep.c2_drift = std::max(rep.c2_drift, std::abs(c2_value(s, Ctilde, conv) - rep.c2_0));
    const double lax = (s.ddV + phi_dot(s, Ctilde, conv)).norm();
    rep.lax_norm_drift = std::max(rep.lax_norm_drift, std::abs(lax - lax0));
  }
  return rep;
}

InvariantReport drift_report(const ComplexTrajectory& traj) {
  const BracketConvention conv{traj.meta.kappa};
  return drift_report(to_algebra_trajectory(traj), vertical_constant(traj.meta.C, conv),
                      conv);
}

std::vector<BoundViolation> check_growth_bounds(const AlgebraTrajectory& traj,
                                                const InvariantReport& report,
                                                const Vec3& Ctilde,
                                                const BracketConvention& conv,
                                                double tol_scale) {
  if (traj.states.empty()) throw InvalidArgument("check_growth_bounds: empty trajectory");

  const double tol = tol_scale * (1.0 + std::abs(report.c2_0));
  const double t0 = traj.times.front();
  const double c1 = report.c1_0;
  const double c5 = 2.0 * inner(traj.states.front().dV, traj.states.front().V);
  const double c6 = inner(traj.states.front().V, traj.states.front().V);

  std::vector<BoundViolation> out;
  for (const auto& s : traj.states) {
    const double acc2 = inner(s.ddV, s.ddV);
    if (acc2 > report.c2_0 + tol) {
      out.push_back({s.t, "<ddV,ddV> = " + std::to_string(acc2) + " exceeds c2"});
    }
    const Vec3 ph = phi_dot(s, Ctilde, conv);
    const double ph2 = inner(ph, ph);
    if (ph2 > report.c2_0 + tol) {
      out.push_back({s.t, "<phi_dot,phi_dot> = " + std::to_string(ph2) + " exceeds c2"});
    }
    const double tau = s.t - t0;
    const double lower = c1 * tau * tau + c5 * tau + c6;
    const double vv = inner(s.V, s.V);
    if (vv < lower - tol) {
      out.push_back({s.t, "<V,V> = " + std::to_string(vv) +
                              " below quadratic lower bound " + std::to_string(lower)});
    }
  }
  return out;
}

std::vector<BoundViolation> check_growth_bounds(const ComplexTrajectory& traj,
                                                const InvariantReport& report,
                                                double tol_scale) {
  const BracketConvention conv{traj.meta.kappa};
  return check_growth_bounds(to_algebra_trajectory(traj), report,
                             vertical_constant(traj.meta.C, conv), conv, tol_scale);
}

}  // namespace liequad
