#include "liequad/solver.hpp"

#include <algorithm>
#include <cmath>

namespace liequad {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
// y5 - y4 coefficients (k7 evaluated at the 5th-order result).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Dopri5Stepper {
  const OdeRhs& f;
  Eigen::VectorXd k1, k2, k3, k4, k5, k6, k7, tmp, ynew, err;

  explicit Dopri5Stepper(const OdeRhs& rhs, Eigen::Index n) : f(rhs) {
    for (auto* v : {&k1, &k2, &k3, &k4, &k5, &k6, &k7, &tmp, &ynew, &err}) v->resize(n);
  }

  // One attempted step; returns the scaled error norm.
  double attempt(double t, const Eigen::VectorXd& y, double h, double abs_tol,
                 double rel_tol) {
    f(t, y, k1);
    tmp = y + h * (a21 * k1);
    f(t + c2 * h, tmp, k2);
    tmp = y + h * (a31 * k1 + a32 * k2);
    f(t + c3 * h, tmp, k3);
    tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * h, tmp, k4);
    tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * h, tmp, k5);
    tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + h, tmp, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    f(t + h, ynew, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    // Weighted max norm.
    double worst = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      worst = std::max(worst, std::abs(err[i]) / sc);
    }
    return worst;
  }
};

void rk4_step(const OdeRhs& f, double t, Eigen::VectorXd& y, double h,
              Eigen::VectorXd& k1, Eigen::VectorXd& k2, Eigen::VectorXd& k3,
              Eigen::VectorXd& k4, Eigen::VectorXd& tmp) {
  f(t, y, k1);
  tmp = y + (0.5 * h) * k1;
  f(t + 0.5 * h, tmp, k2);
  tmp = y + (0.5 * h) * k2;
  f(t + 0.5 * h, tmp, k3);
  tmp = y + h * k3;
  f(t + h, tmp, k4);
  y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::vector<double> observation_grid(double t0, double t1, double dt_obs) {
  std::vector<double> grid;
  const double span = t1 - t0;
  const auto n = static_cast<long>(std::floor(span / dt_obs + 1e-9));
  grid.reserve(static_cast<std::size_t>(n) + 2);
  for (long k = 0; k <= n; ++k) grid.push_back(t0 + static_cast<double>(k) * dt_obs);
  if (t1 - grid.back() > 1e-12 * std::max(1.0, std::abs(t1))) {
    grid.push_back(t1);
  } else {
    grid.back() = t1;
  }
  return grid;
}

OdeSolution integrate_forward(const OdeRhs& f, const Eigen::VectorXd& y0, double t0,
                              double t1, const SolverSettings& settings, double dt_obs) {
  const std::vector<double> grid = observation_grid(t0, t1, dt_obs);

  OdeSolution out;
  out.times = grid;
  out.states.reserve(grid.size());
  out.states.push_back(y0);

  Eigen::VectorXd y = y0;
  double t = t0;
  long steps = 0;
  const auto charge = [&] {
    if (++steps > settings.max_steps) {
      throw Budget("integrate_ode: exceeded max_steps = " + std::to_string(settings.max_steps));
    }
  };

  if (settings.method == StepMethod::rk4_fixed) {
    if (!(settings.step > 0.0)) throw InvalidArgument("integrate_ode: step must be > 0");
    Eigen::VectorXd k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());
    for (std::size_t gi = 1; gi < grid.size(); ++gi) {
      const double target = grid[gi];
      while (t < target - 1e-14 * std::max(1.0, std::abs(target))) {
        charge();
        const double h = std::min(settings.step, target - t);
        rk4_step(f, t, y, h, k1, k2, k3, k4, tmp);
        t += h;
      }
      t = target;
      out.states.push_back(y);
    }
    return out;
  }

  // rk45_adaptive
  if (!(settings.abs_tol > 0.0) || !(settings.rel_tol > 0.0)) {
    throw InvalidArgument("integrate_ode: tolerances must be > 0");
  }
  // PI step controller with error history (the classic embedded-4(5)
  // controller: safety 0.9, beta 0.04, growth <= 10, shrink >= 1/5).
  constexpr double kSafe = 0.9, kBeta = 0.04, kExpo = 0.2 - kBeta * 0.75;
  Dopri5Stepper stepper(f, y.size());
  double h_ctrl = std::min(dt_obs, (t1 - t0) / 100.0);
  double fac_old = 1e-4;
  bool rejected = false;
  for (std::size_t gi = 1; gi < grid.size(); ++gi) {
    const double target = grid[gi];
    while (t < target - 1e-14 * std::max(1.0, std::abs(target))) {
      charge();
      const double h = std::min(h_ctrl, target - t);
      if (h < 1e-14 * std::max(1.0, std::abs(t))) {
        throw StepFailure("integrate_ode: step size underflow at t = " + std::to_string(t));
      }
      const double errn =
          std::max(stepper.attempt(t, y, h, settings.abs_tol, settings.rel_tol), 1e-16);
      const double fac11 = std::pow(errn, kExpo);
      if (errn <= 1.0) {
        const double fac =
            std::clamp(fac11 / (kSafe * std::pow(fac_old, kBeta)), 0.1, 5.0);
        t += h;
        y = stepper.ynew;
        double h_new = h / fac;
        if (rejected) h_new = std::min(h_new, h);
        h_ctrl = h_new;
        fac_old = errn;
        rejected = false;
      } else {
        h_ctrl = h / std::min(5.0, fac11 / kSafe);
        rejected = true;
      }
    }
    t = target;
    out.states.push_back(y);
  }
  return out;
}

}  // namespace

OdeSolution integrate_ode(const OdeRhs& f, const Eigen::VectorXd& y0, double t0, double t1,
                          const SolverSettings& settings, double dt_obs) {
  if (!(dt_obs > 0.0)) throw InvalidArgument("integrate_ode: dt_obs must be > 0");
  if (t0 == t1) throw InvalidArgument("integrate_ode: degenerate time span");
  if (settings.max_steps <= 0) throw InvalidArgument("integrate_ode: max_steps must be > 0");

  if (t1 > t0) return integrate_forward(f, y0, t0, t1, settings, dt_obs);

  // Reversed span: integrate y'(s) = -f(-s, y) on [-t0, -t1], then restore
  // chronological order.
  const OdeRhs g = [&f](double s, const Eigen::VectorXd& y, Eigen::VectorXd& dydt) {
    f(-s, y, dydt);
    dydt = -dydt;
  };
  OdeSolution rev = integrate_forward(g, y0, -t0, -t1, settings, dt_obs);
  OdeSolution out;
  const std::size_t n = rev.times.size();
  out.times.resize(n);
  out.states.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.times[i] = -rev.times[n - 1 - i];
    out.states[i] = std::move(rev.states[n - 1 - i]);
  }
  return out;
}

}  // namespace liequad
