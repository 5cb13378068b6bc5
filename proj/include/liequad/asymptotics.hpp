#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "liequad/trajectory.hpp"

namespace liequad {

struct AsymptoticEstimate {
  double alpha = 0.0;        // estimated limit angle, radians
  double d1 = 0.0;           // tail constant in |theta'| <= 1/(d1 t^2)
  double error_bound = 0.0;  // rigorous bar on alpha: 1/(d1 t_last)
  double c7 = 0.0;           // parabola q ~ (c7 t + c8)^2/(4 c7) + 2 c1/c7
  double c8 = 0.0;
  double c1 = 0.0;           // first integral used by the parabola model
  double fit_residual = 0.0;
  double tail_start = 0.0;   // t from which the tail model is trusted
};

struct ParabolaFit {
  double c7 = 0.0;
  double c8 = 0.0;
  double fit_residual = 0.0;  // sup norm over the window
};

struct BoundRow {
  double t = 0.0, q = 0.0, theta = 0.0, lhs = 0.0, rhs = 0.0;
  bool flagged_raw = false;  // lhs > rhs
  bool flagged = false;      // lhs > rhs (1 + slack) + alpha error bar
};

struct BoundSeries {
  std::string name;
  double slack = 0.1;
  std::vector<BoundRow> rows;  // time-ordered
};

struct CorrectionResult {
  Vec3 predicted = Vec3::Zero();
  Vec3 actual = Vec3::Zero();
  double err = 0.0;
};

// Last time q' = Re(conj(v) v')/q changes sign, plus 5 time units; start of
// span plus 5 when it never does. The early oscillatory phase sits before
// this point on both worked examples.
double default_tail_start(const ComplexTrajectory& traj);

// Angle limit with a rigorous error bar. On the tail window the lift is
// computed, d1 is the largest constant with |theta'(t)| <= 1/(d1 t^2) at
// every tail sample (capped at 1e15 when theta' vanishes), alpha is the
// lifted angle at t_last and error_bound = 1/(d1 t_last). The Cauchy bound
// |theta(s) - theta(r)| <= (1/d1)(1/r - 1/s) then holds for all tail pairs
// by construction.
//
// Throws InsufficientTail when the tail holds fewer than 10 samples or
// starts at t <= 0; ZeroVelocity propagates from the lift.
AsymptoticEstimate estimate_alpha(const ComplexTrajectory& traj,
                                  std::optional<double> tail_start = std::nullopt);

// Least-squares fit of q(t) to (c7 t + c8)^2/(4 c7) + 2 c1/c7 on the window,
// c1 supplied from the conservation report. Throws NotGrowing when q' <= 0
// anywhere in the window.
ParabolaFit fit_q_parabola(const ComplexTrajectory& traj,
                           std::pair<double, double> window, double c1);

// Evaluates the fitted parabola model at time t.
double parabola_model(const AsymptoticEstimate& est, double t);

// int_r^inf dt / (2 q(t)^2): trapezoid over the samples up to t_last plus
// the closed-form tail of the fitted parabola on [t_last, inf).
double tail_integral(const ComplexTrajectory& traj, const AsymptoticEstimate& est,
                     double r);

// The two null-case inequality series over the given window:
//   corrected_direction:  || (V + V''/(2q^2))/q - alpha ||  vs  sqrt(c2)/(2 q^3)
//   velocity_asymptote:   || q alpha - V ||                 vs  sqrt(c2)/(2 q^2)
// alpha enters as the horizontal unit vector (cos, sin, 0). A row is flagged
// when lhs > rhs (1 + slack) + est.error_bound.
// Throws NonNull when the trajectory was integrated with C != 0.
std::array<BoundSeries, 2> null_bound_series(const ComplexTrajectory& traj,
                                             const AsymptoticEstimate& est, double c2,
                                             std::pair<double, double> window,
                                             double slack = 0.1);

// Improves the angle estimate through the tail relation
//   theta(r) = alpha - kappa Ctilde_z int_r^inf dt/q^2 + O(r^-4),
// evaluated at t_last. A no-op for null runs; for a nonzero constant it
// removes the O(t_last^-3) systematic part of alpha = theta(t_last), which
// otherwise dominates convergence-order measurements of the tail estimate.
// Requires est to carry a parabola fit.
AsymptoticEstimate refine_alpha(const ComplexTrajectory& traj, AsymptoticEstimate est,
                                const Vec3& Ctilde, const BracketConvention& conv = {});

// Tail estimate with the first-order vertical-constant correction:
//   V(r) ~ q(r) alpha - q(r) (int_r^inf dt/q^2) [Ctilde, alpha].
// Returns the prediction, the interpolated trajectory value and their
// distance.
CorrectionResult nonnull_correction(const ComplexTrajectory& traj,
                                    const AsymptoticEstimate& est, const Vec3& Ctilde,
                                    double r, const BracketConvention& conv = {});

// Quintic Hermite interpolation of v at time t (t inside the sampled span).
Complex interpolate_v(const ComplexTrajectory& traj, double t);

}  // namespace liequad
