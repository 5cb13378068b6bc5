#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

#include "liequad/errors.hpp"

namespace liequad {

enum class StepMethod { rk4_fixed, rk45_adaptive };

struct SolverSettings {
  StepMethod method = StepMethod::rk45_adaptive;
  double step = 1e-3;       // rk4_fixed step size
  double abs_tol = 1e-10;   // rk45 absolute tolerance
  double rel_tol = 1e-10;   // rk45 relative tolerance
  long max_steps = 50'000'000;
};

using OdeRhs = std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dydt)>;

struct OdeSolution {
  std::vector<double> times;            // strictly increasing
  std::vector<Eigen::VectorXd> states;  // one per time
};

// Integrates y' = f(t, y) over [t0, t1] and samples the solution on the
// fixed observation grid t0 + k*dt_obs (plus the endpoint). Steps are
// clamped so every observation time is hit exactly.
//
// t1 < t0 is handled by integrating the reversed system y'(s) = -f(-s, y)
// forward in s; the returned grid is always chronological.
//
// Throws StepFailure on adaptive step underflow, Budget past max_steps,
// InvalidArgument on a degenerate span; rhs exceptions propagate.
OdeSolution integrate_ode(const OdeRhs& f, const Eigen::VectorXd& y0, double t0, double t1,
                          const SolverSettings& settings, double dt_obs);

}  // namespace liequad
