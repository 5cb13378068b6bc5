#include "liequad/integrate.hpp"

#include <cmath>

namespace liequad {

namespace {

Eigen::VectorXd pack_complex(const QuadraticState& s) {
  Eigen::VectorXd y(6);
  y << s.v.real(), s.v.imag(), s.dv.real(), s.dv.imag(), s.ddv.real(), s.ddv.imag();
  return y;
}

QuadraticState unpack_complex(double t, const Eigen::VectorXd& y) {
  QuadraticState s;
  s.t = t;
  s.v = Complex(y[0], y[1]);
  s.dv = Complex(y[2], y[3]);
  s.ddv = Complex(y[4], y[5]);
  return s;
}

Eigen::VectorXd pack_algebra(const AlgebraQuadraticState& s) {
  Eigen::VectorXd y(9);
  y.segment<3>(0) = s.V;
  y.segment<3>(3) = s.dV;
  y.segment<3>(6) = s.ddV;
  return y;
}

AlgebraQuadraticState unpack_algebra(double t, const Eigen::VectorXd& y) {
  AlgebraQuadraticState s;
  s.t = t;
  s.V = y.segment<3>(0);
  s.dV = y.segment<3>(3);
  s.ddV = y.segment<3>(6);
  return s;
}

}  // namespace

ComplexTrajectory integrate_complex(const QuadraticState& s0, double C,
                                    std::pair<double, double> tspan,
                                    const SolverSettings& settings, double dt_obs) {
  const OdeRhs f = [C](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dydt) {
    const QuadraticState s = unpack_complex(t, y);
    const auto d = quadratic_rhs(s, C);
    dydt.resize(6);
    dydt << d[0].real(), d[0].imag(), d[1].real(), d[1].imag(), d[2].real(), d[2].imag();
  };
  const OdeSolution sol =
      integrate_ode(f, pack_complex(s0), tspan.first, tspan.second, settings, dt_obs);

  ComplexTrajectory out;
  out.times = sol.times;
  out.states.reserve(sol.states.size());
  for (std::size_t i = 0; i < sol.times.size(); ++i) {
    out.states.push_back(unpack_complex(sol.times[i], sol.states[i]));
  }
  out.meta = {SystemForm::complex_cubic, settings, 1.0, C, vertical_constant(C), dt_obs};
  return out;
}

AlgebraTrajectory integrate_algebra(const AlgebraQuadraticState& s0, const Vec3& Ctilde,
                                    std::pair<double, double> tspan,
                                    const SolverSettings& settings, double dt_obs,
                                    const BracketConvention& conv) {
  const OdeRhs f = [&Ctilde, &conv](double t, const Eigen::VectorXd& y,
                                    Eigen::VectorXd& dydt) {
    const AlgebraQuadraticState s = unpack_algebra(t, y);
    const auto d = symmetric_rhs(s, Ctilde, conv);
    dydt.resize(9);
    dydt.segment<3>(0) = d[0];
    dydt.segment<3>(3) = d[1];
    dydt.segment<3>(6) = d[2];
  };
  const OdeSolution sol =
      integrate_ode(f, pack_algebra(s0), tspan.first, tspan.second, settings, dt_obs);

  AlgebraTrajectory out;
  out.times = sol.times;
  out.states.reserve(sol.states.size());
  for (std::size_t i = 0; i < sol.times.size(); ++i) {
    out.states.push_back(unpack_algebra(sol.times[i], sol.states[i]));
  }
  out.meta = {SystemForm::algebra_cubic, settings, conv.kappa,
              -conv.kappa * Ctilde.z(), Ctilde, dt_obs};
  return out;
}

PolarTrajectory integrate_polar(const PolarState& s0, double C,
                                std::pair<double, double> tspan,
                                const SolverSettings& settings, double dt_obs) {
  const OdeRhs f = [C](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dydt) {
    PolarState s;
    s.t = t;
    s.q = y[0];
    s.dq = y[1];
    s.ddq = y[2];
    s.theta = y[3];
    s.dtheta = y[4];
    s.ddtheta = y[5];
    const auto d = polar_rhs(s, C);
    dydt.resize(6);
    for (int i = 0; i < 6; ++i) dydt[i] = d[static_cast<std::size_t>(i)];
  };
  Eigen::VectorXd y0(6);
  y0 << s0.q, s0.dq, s0.ddq, s0.theta, s0.dtheta, s0.ddtheta;
  const OdeSolution sol = integrate_ode(f, y0, tspan.first, tspan.second, settings, dt_obs);

  PolarTrajectory out;
  out.times = sol.times;
  out.states.reserve(sol.states.size());
  for (std::size_t i = 0; i < sol.times.size(); ++i) {
    const auto& y = sol.states[i];
    PolarState s;
    s.t = sol.times[i];
    s.q = y[0];
    s.dq = y[1];
    s.ddq = y[2];
    s.theta = y[3];
    s.dtheta = y[4];
    s.ddtheta = y[5];
    out.states.push_back(s);
  }
  out.meta = {SystemForm::polar_cubic, settings, 1.0, C, vertical_constant(C), dt_obs};
  return out;
}

AlgebraTrajectory integrate_riemannian(const Vec3& V0, const Vec3& dV0, const Vec3& Cvec,
                                       std::pair<double, double> tspan,
                                       const SolverSettings& settings, double dt_obs,
                                       const BracketConvention& conv) {
  const OdeRhs f = [&Cvec, &conv](double /*t*/, const Eigen::VectorXd& y,
                                  Eigen::VectorXd& dydt) {
    const Vec3 V = y.segment<3>(0);
    const Vec3 dV = y.segment<3>(3);
    dydt.resize(6);
    dydt.segment<3>(0) = dV;
    dydt.segment<3>(3) = riemannian_quadratic_rhs(V, dV, Cvec, conv);
  };
  Eigen::VectorXd y0(6);
  y0.segment<3>(0) = V0;
  y0.segment<3>(3) = dV0;
  const OdeSolution sol = integrate_ode(f, y0, tspan.first, tspan.second, settings, dt_obs);

  AlgebraTrajectory out;
  out.times = sol.times;
  out.states.reserve(sol.states.size());
  for (std::size_t i = 0; i < sol.times.size(); ++i) {
    AlgebraQuadraticState s;
    s.t = sol.times[i];
    s.V = sol.states[i].segment<3>(0);
    s.dV = sol.states[i].segment<3>(3);
    s.ddV = riemannian_quadratic_rhs(s.V, s.dV, Cvec, conv);
    out.states.push_back(s);
  }
  out.meta = {SystemForm::riemannian_quadratic, settings, conv.kappa, 0.0, Cvec, dt_obs};
  return out;
}

namespace {

// Two-point quintic Hermite interpolant of V on one grid interval, built
// from (V, V', V'') at both ends. Exact for polynomials of degree <= 5.
struct HermiteInterval {
  double t0, h;
  Vec3 p0, m0, a0, p1, m1, a1;

  Vec3 eval(double t) const {
    const double s = (t - t0) / h;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const double H0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    const double H1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    const double H2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
    const double H3 = 0.5 * s3 - s4 + 0.5 * s5;
    const double H4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
    const double H5 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
    return H0 * p0 + (H1 * h) * m0 + (H2 * h * h) * a0 + (H3 * h * h) * a1 +
           (H4 * h) * m1 + H5 * p1;
  }
};

constexpr double kGaussOffset = 0.28867513459481288225;  // sqrt(3)/6

}  // namespace

GroupTrajectory reconstruct_group(const AlgebraTrajectory& vel, const Quat& x0,
                                  double max_step_rotation) {
  if (vel.times.size() < 2) {
    throw InvalidArgument("reconstruct_group: need at least two samples");
  }
  if (!(max_step_rotation > 0.0)) {
    throw InvalidArgument("reconstruct_group: max_step_rotation must be > 0");
  }

  GroupTrajectory out;
  out.times = vel.times;
  out.points.reserve(vel.times.size());

  Quat x = x0.normalized();
  out.points.push_back(x);

  long substeps_total = 0;
  for (std::size_t k = 0; k + 1 < vel.times.size(); ++k) {
    const double h = vel.times[k + 1] - vel.times[k];
    const auto& s0 = vel.states[k];
    const auto& s1 = vel.states[k + 1];
    const HermiteInterval interp{vel.times[k], h, s0.V, s0.dV, s0.ddV,
                                 s1.V,         s1.dV, s1.ddV};

    const double vmax = std::max(s0.V.norm(), s1.V.norm()) + 1e-12;
    const int m = std::max(1, static_cast<int>(std::ceil(std::abs(h) * vmax /
                                                        max_step_rotation)));
    if ((substeps_total += m) > 100'000'000) {
      throw Budget("reconstruct_group: substep budget exceeded");
    }
    const double hs = h / m;
    for (int j = 0; j < m; ++j) {
      const double a = vel.times[k] + j * hs;
      const Vec3 A1 = interp.eval(a + (0.5 - kGaussOffset) * hs);
      const Vec3 A2 = interp.eval(a + (0.5 + kGaussOffset) * hs);
      const Vec3 omega = (0.5 * hs) * (A1 + A2) +
                         (std::sqrt(3.0) / 12.0 * hs * hs) * A1.cross(A2);
      x = (x * exp_map(omega)).normalized();
    }
    out.points.push_back(x);
  }
  return out;
}

GroupTrajectory reconstruct_group(const ComplexTrajectory& vel, const Quat& x0,
                                  double max_step_rotation) {
  return reconstruct_group(to_algebra_trajectory(vel), x0, max_step_rotation);
}

Vec3 stereographic_project(const Quat& g) {
  const double denom = 1.0 - g.z();
  if (std::abs(denom) <= 1e-12) {
    throw PoleProjection("stereographic_project: point at the projection pole");
  }
  return Vec3(g.w(), g.x(), g.y()) / denom;
}

}  // namespace liequad
