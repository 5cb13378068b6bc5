#include "liequad/asymptotics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace liequad {

namespace {

double q_of(const QuadraticState& s) { return std::abs(s.v); }

// Radial velocity from the state, q' = Re(conj(v) v') / q.
double dq_of(const QuadraticState& s) {
  const double q = std::abs(s.v);
  return (std::conj(s.v) * s.dv).real() / q;
}

// theta' = Im(conj(v) v') / q^2.
double dtheta_of(const QuadraticState& s) {
  const double q2 = std::norm(s.v);
  return (std::conj(s.v) * s.dv).imag() / q2;
}

std::size_t lower_index(const std::vector<double>& times, double t) {
  auto it = std::lower_bound(times.begin(), times.end(), t - 1e-12);
  if (it == times.end()) return times.size() - 1;
  return static_cast<std::size_t>(it - times.begin());
}

constexpr double kD1Cap = 1e15;

}  // namespace

double default_tail_start(const ComplexTrajectory& traj) {
  if (traj.states.size() < 2) {
    throw InvalidArgument("default_tail_start: need at least two samples");
  }
  double last_change = traj.times.front();
  double prev = dq_of(traj.states.front());
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    const double cur = dq_of(traj.states[i]);
    if (prev * cur < 0.0) last_change = traj.times[i];
    prev = cur;
  }
  return last_change + 5.0;
}

AsymptoticEstimate estimate_alpha(const ComplexTrajectory& traj,
                                  std::optional<double> tail_start) {
  if (traj.states.size() < 2) {
    throw InsufficientTail("estimate_alpha: trajectory too short");
  }
  const double ts = tail_start.value_or(default_tail_start(traj));
  const double t_last = traj.times.back();
  if (!(ts > 0.0)) {
    throw InsufficientTail("estimate_alpha: tail must start at t > 0");
  }

  std::vector<Complex> tail;
  std::vector<double> tail_times;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] >= ts - 1e-12) {
      if (std::abs(traj.states[i].v) <= kQMin) {
        throw ZeroVelocity("estimate_alpha: |v| <= q_min inside the tail window");
      }
      tail.push_back(traj.states[i].v);
      tail_times.push_back(traj.times[i]);
    }
  }
  if (tail.size() < 10) {
    throw InsufficientTail("estimate_alpha: only " + std::to_string(tail.size()) +
                           " samples past tail_start");
  }

  const std::vector<double> theta = angle_lift(tail);

  // Largest d1 with |theta'| <= 1/(d1 t^2) at every tail sample.
  double d1 = kD1Cap;
  for (std::size_t i = 0; i < tail_times.size(); ++i) {
    const std::size_t gi = lower_index(traj.times, tail_times[i]);
    const double td = std::abs(dtheta_of(traj.states[gi]));
    if (td > 0.0) {
      d1 = std::min(d1, 1.0 / (tail_times[i] * tail_times[i] * td));
    }
  }

  AsymptoticEstimate est;
  est.alpha = theta.back();
  est.d1 = d1;
  est.error_bound = 1.0 / (d1 * t_last);
  est.tail_start = ts;
  est.c7 = est.c8 = est.c1 = est.fit_residual = std::nan("");
  return est;
}

ParabolaFit fit_q_parabola(const ComplexTrajectory& traj, std::pair<double, double> window,
                           double c1) {
  if (window.first >= window.second || window.first < traj.times.front() - 1e-9 ||
      window.second > traj.times.back() + 1e-9) {
    throw InvalidArgument("fit_q_parabola: window outside sampled span");
  }

  std::vector<double> ts, qs;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t < window.first - 1e-12 || t > window.second + 1e-12) continue;
    if (dq_of(traj.states[i]) <= 0.0) {
      throw NotGrowing("fit_q_parabola: q' <= 0 at t = " + std::to_string(t));
    }
    ts.push_back(t);
    qs.push_back(q_of(traj.states[i]));
  }
  if (ts.size() < 8) throw InvalidArgument("fit_q_parabola: fewer than 8 samples in window");

  // Initial guess from the unconstrained quadratic fit q ~ a t^2 + b t + k.
  Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Eigen::Vector3d row(ts[i] * ts[i], ts[i], 1.0);
    M += row * row.transpose();
    rhs += row * qs[i];
  }
  const Eigen::Vector3d abk = M.ldlt().solve(rhs);
  double c7 = std::max(4.0 * abk[0], 1e-8);
  double c8 = 2.0 * abk[1];

  const auto model = [&](double t, double p7, double p8) {
    const double u = p7 * t + p8;
    return u * u / (4.0 * p7) + 2.0 * c1 / p7;
  };

  // Gauss-Newton with step halving on the two-parameter model.
  for (int iter = 0; iter < 80; ++iter) {
    Eigen::Matrix2d JtJ = Eigen::Matrix2d::Zero();
    Eigen::Vector2d Jtr = Eigen::Vector2d::Zero();
    double sse = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double t = ts[i];
      const double u = c7 * t + c8;
      const double r = model(t, c7, c8) - qs[i];
      const double d7 = u * t / (2.0 * c7) - u * u / (4.0 * c7 * c7) - 2.0 * c1 / (c7 * c7);
      const double d8 = u / (2.0 * c7);
      const Eigen::Vector2d g(d7, d8);
      JtJ += g * g.transpose();
      Jtr += g * r;
      sse += r * r;
    }
    Eigen::Vector2d step = JtJ.ldlt().solve(Jtr);
    double scale = 1.0;
    for (int half = 0; half < 30; ++half) {
      const double n7 = c7 - scale * step[0];
      const double n8 = c8 - scale * step[1];
      if (n7 > 0.0) {
        double nsse = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
          const double r = model(ts[i], n7, n8) - qs[i];
          nsse += r * r;
        }
        if (nsse <= sse) {
          c7 = n7;
          c8 = n8;
          break;
        }
      }
      scale *= 0.5;
    }
    if (step.norm() * scale < 1e-14 * (std::abs(c7) + std::abs(c8))) break;
  }

  ParabolaFit fit;
  fit.c7 = c7;
  fit.c8 = c8;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    fit.fit_residual = std::max(fit.fit_residual, std::abs(model(ts[i], c7, c8) - qs[i]));
  }
  return fit;
}

double parabola_model(const AsymptoticEstimate& est, double t) {
  const double u = est.c7 * t + est.c8;
  return u * u / (4.0 * est.c7) + 2.0 * est.c1 / est.c7;
}

namespace {

// int_{uL}^inf du / (2 (A u^2 + K)^2), the exact tail of the parabola model
// written as q(t) = A (t - t0)^2 + K.
double parabola_tail_integral(double A, double K, double uL) {
  if (!(A > 0.0) || !(uL > 0.0)) {
    throw NumericalError("tail_integral: parabola model not growing at the tail");
  }
  const double scale = A * uL * uL;
  if (std::abs(K) <= 1e-10 * scale) {
    return 1.0 / (6.0 * A * A * uL * uL * uL);
  }
  if (K > 0.0) {
    const double I = -uL / (2.0 * K * (A * uL * uL + K)) +
                     (0.5 / K) * (1.0 / std::sqrt(A * K)) *
                         (M_PI / 2.0 - std::atan(uL * std::sqrt(A / K)));
    return 0.5 * I;
  }
  const double m = -K;
  const double r0 = std::sqrt(m / A);
  if (uL <= r0) {
    throw NumericalError("tail_integral: parabola model has a zero beyond t_last");
  }
  const double I = (1.0 / (A * A)) * (uL / (2.0 * r0 * r0 * (uL * uL - r0 * r0)) +
                                      std::log((uL - r0) / (uL + r0)) / (4.0 * r0 * r0 * r0));
  return 0.5 * I;
}

}  // namespace

double tail_integral(const ComplexTrajectory& traj, const AsymptoticEstimate& est,
                     double r) {
  const double t_last = traj.times.back();
  if (r < traj.times.front() - 1e-9 || r > t_last + 1e-9) {
    throw InvalidArgument("tail_integral: r outside sampled span");
  }
  if (!(est.c7 > 0.0)) {
    throw InvalidArgument("tail_integral: estimate carries no parabola fit");
  }

  const auto integrand = [&](std::size_t i) {
    const double q = q_of(traj.states[i]);
    return 1.0 / (2.0 * q * q);
  };

  // Trapezoid over the sampled part [r, t_last].
  double acc = 0.0;
  std::size_t i0 = lower_index(traj.times, r);
  if (i0 > 0 && traj.times[i0] > r + 1e-12) {
    // Partial leading interval, integrand interpolated linearly.
    const std::size_t a = i0 - 1;
    const double ta = traj.times[a], tb = traj.times[i0];
    const double fa = integrand(a), fb = integrand(i0);
    const double fr = fa + (fb - fa) * (r - ta) / (tb - ta);
    acc += 0.5 * (fr + fb) * (tb - r);
  }
  for (std::size_t i = i0; i + 1 < traj.times.size(); ++i) {
    acc += 0.5 * (integrand(i) + integrand(i + 1)) * (traj.times[i + 1] - traj.times[i]);
  }

  // Closed-form remainder of the fitted model on [t_last, inf).
  const double A = est.c7 / 4.0;
  const double t0 = -est.c8 / est.c7;
  const double K = 2.0 * est.c1 / est.c7;
  return acc + parabola_tail_integral(A, K, t_last - t0);
}

std::array<BoundSeries, 2> null_bound_series(const ComplexTrajectory& traj,
                                             const AsymptoticEstimate& est, double c2,
                                             std::pair<double, double> window,
                                             double slack) {
  if (traj.meta.C != 0.0) {
    throw NonNull("null_bound_series: trajectory integrated with C = " +
                  std::to_string(traj.meta.C));
  }
  const Vec3 alpha_vec(std::cos(est.alpha), std::sin(est.alpha), 0.0);
  const double sqrt_c2 = std::sqrt(std::max(c2, 0.0));

  std::vector<Complex> vs;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] >= window.first - 1e-12 && traj.times[i] <= window.second + 1e-12) {
      vs.push_back(traj.states[i].v);
      idx.push_back(i);
    }
  }
  const std::vector<double> theta = angle_lift(vs);

  std::array<BoundSeries, 2> out;
  out[0].name = "corrected_direction";
  out[1].name = "velocity_asymptote";
  out[0].slack = out[1].slack = slack;

  for (std::size_t k = 0; k < idx.size(); ++k) {
    const auto& s = traj.states[idx[k]];
    const double q = q_of(s);
    const Vec3 V = from_complex(s.v);
    const Vec3 ddV = from_complex(s.ddv);
    const Vec3 vcal = V + ddV / (2.0 * q * q);

    BoundRow r1;
    r1.t = s.t;
    r1.q = q;
    r1.theta = theta[k];
    r1.lhs = (vcal / q - alpha_vec).norm();
    r1.rhs = sqrt_c2 / (2.0 * q * q * q);
    r1.flagged_raw = r1.lhs > r1.rhs;
    r1.flagged = r1.lhs > r1.rhs * (1.0 + slack) + est.error_bound;
    out[0].rows.push_back(r1);

    BoundRow r2 = r1;
    r2.lhs = (q * alpha_vec - V).norm();
    r2.rhs = sqrt_c2 / (2.0 * q * q);
    r2.flagged_raw = r2.lhs > r2.rhs;
    r2.flagged = r2.lhs > r2.rhs * (1.0 + slack) + est.error_bound * q;
    out[1].rows.push_back(r2);
  }
  return out;
}

Complex interpolate_v(const ComplexTrajectory& traj, double t) {
  if (t < traj.times.front() - 1e-9 || t > traj.times.back() + 1e-9) {
    throw InvalidArgument("interpolate_v: t outside sampled span");
  }
  std::size_t hi = lower_index(traj.times, t);
  if (hi == 0) return traj.states.front().v;
  if (std::abs(traj.times[hi] - t) <= 1e-12) return traj.states[hi].v;
  const std::size_t lo = hi - 1;
  const double h = traj.times[hi] - traj.times[lo];
  const double s = (t - traj.times[lo]) / h;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double H0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
  const double H1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
  const double H2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
  const double H3 = 0.5 * s3 - s4 + 0.5 * s5;
  const double H4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
  const double H5 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
  const auto& a = traj.states[lo];
  const auto& b = traj.states[hi];
  return H0 * a.v + (H1 * h) * a.dv + (H2 * h * h) * a.ddv + (H3 * h * h) * b.ddv +
         (H4 * h) * b.dv + H5 * b.v;
}

AsymptoticEstimate refine_alpha(const ComplexTrajectory& traj, AsymptoticEstimate est,
                                const Vec3& Ctilde, const BracketConvention& conv) {
  const double I = 2.0 * tail_integral(traj, est, traj.times.back());
  est.alpha += I * conv.kappa * Ctilde.z();
  return est;
}

CorrectionResult nonnull_correction(const ComplexTrajectory& traj,
                                    const AsymptoticEstimate& est, const Vec3& Ctilde,
                                    double r, const BracketConvention& conv) {
  const Vec3 alpha_vec(std::cos(est.alpha), std::sin(est.alpha), 0.0);
  const Complex v_r = interpolate_v(traj, r);
  const double q_r = std::abs(v_r);
  // With structure constant 1 the identity
  //   d/dt((V + V''/q^2)/q) = -3 q' V''/q^4 + [Ctilde, V]/q^3
  // integrates to a correction with integrand 1/q^2, i.e. twice tail_integral.
  const double J = 2.0 * tail_integral(traj, est, r);

  CorrectionResult res;
  res.predicted = q_r * alpha_vec - q_r * J * bracket(Ctilde, alpha_vec, conv);
  res.actual = from_complex(v_r);
  res.err = (res.predicted - res.actual).norm();
  return res;
}

}  // namespace liequad
