#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

#include "liequad/builtin_examples.hpp"
#include "liequad/integrate.hpp"

using namespace liequad;
using namespace liequad::testing;

TEST_CASE("integrate_complex: the constant solution of the null system stays put") {
  QuadraticState s0;
  s0.v = {1, 0};
  const ComplexTrajectory t = integrate_complex(s0, 0.0, {0.0, 10.0});
  for (const auto& s : t.states) {
    CHECK(std::abs(s.v - Complex(1, 0)) <= 1e-10);
    CHECK(std::abs(s.dv) <= 1e-10);
  }
}

TEST_CASE("integrate_algebra: affine solution matches the closed form") {
  const auto [s0, Ct] = linear_quadratic(Vec3::UnitX(), Vec3::UnitY(), 0.0);
  const AlgebraTrajectory t = integrate_algebra(s0, Ct, {0.0, 10.0});
  double worst = 0.0;
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    const auto [ref, c] = linear_quadratic(Vec3::UnitX(), Vec3::UnitY(), t.times[i]);
    worst = std::max(worst, (t.states[i].V - ref.V).norm());
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("integrate_complex: the same affine curve in complex form needs C = -1") {
  QuadraticState s0;
  s0.v = {1, 0};
  s0.dv = {0, 1};
  const ComplexTrajectory t = integrate_complex(s0, -1.0, {0.0, 10.0});
  double worst = 0.0;
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    worst = std::max(worst, std::abs(t.states[i].v - Complex(1.0, t.times[i])));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("integrate_complex: example 1 runs to t = 80 without error") {
  const ExampleConfig ex = builtin_example(1);
  const ComplexTrajectory t = integrate_complex(ex.s0, ex.C, {0.0, 80.0});
  CHECK(t.times.back() == 80.0);
  CHECK(t.times.size() == 8001);
  for (const auto& s : t.states) {
    CHECK(std::isfinite(s.v.real()));
    CHECK(std::isfinite(s.ddv.imag()));
  }
}

TEST_CASE("integrate_complex: time reversal returns to the initial state") {
  const ExampleConfig ex = builtin_example(2);
  const ComplexTrajectory fwd = integrate_complex(ex.s0, ex.C, {0.0, 10.0});
  const ComplexTrajectory bwd =
      integrate_complex(fwd.states.back(), ex.C, {10.0, 0.0});
  CHECK(bwd.times.front() == 0.0);
  CHECK(bwd.times.back() == 10.0);
  const QuadraticState& s = bwd.states.front();
  CHECK(std::abs(s.v - ex.s0.v) <= 1e-7);
  CHECK(std::abs(s.dv - ex.s0.dv) <= 1e-7);
  CHECK(std::abs(s.ddv - ex.s0.ddv) <= 1e-7);
}

TEST_CASE("integrate_complex: negative spans produce chronological grids") {
  const ExampleConfig ex = builtin_example(1);
  const ComplexTrajectory t = integrate_complex(ex.s0, ex.C, {0.0, -5.0});
  CHECK(t.times.front() == -5.0);
  CHECK(t.times.back() == 0.0);
  for (std::size_t i = 1; i < t.times.size(); ++i) CHECK(t.times[i] > t.times[i - 1]);
  CHECK(std::abs(t.states.back().v - ex.s0.v) <= 1e-10);
}

TEST_CASE("integrate_complex: degenerate span and budget errors") {
  QuadraticState s0;
  s0.v = {1, 0};
  CHECK_THROWS_AS((void)integrate_complex(s0, 0.0, {1.0, 1.0}), InvalidArgument);
  SolverSettings st;
  st.max_steps = 10;
  const ExampleConfig ex = builtin_example(1);
  CHECK_THROWS_AS((void)integrate_complex(ex.s0, ex.C, {0.0, 10.0}, st), Budget);
}

TEST_CASE("integrate_polar: radial underflow propagates") {
  PolarState p0;
  p0.q = 2e-6;
  p0.dq = -1.0;
  CHECK_THROWS_AS((void)integrate_polar(p0, 0.0, {0.0, 1.0}), RadialUnderflow);
}

TEST_CASE("adaptive and fixed-step integrations agree on example 2") {
  const ExampleConfig ex = builtin_example(2);
  const ComplexTrajectory ta = integrate_complex(ex.s0, ex.C, {0.0, 20.0});
  SolverSettings fixed;
  fixed.method = StepMethod::rk4_fixed;
  fixed.step = 1e-3;
  const ComplexTrajectory tf = integrate_complex(ex.s0, ex.C, {0.0, 20.0}, fixed);
  double worst = 0.0;
  for (std::size_t i = 0; i < ta.times.size(); ++i) {
    worst = std::max(worst, std::abs(ta.states[i].v - tf.states[i].v) /
                                (1.0 + std::abs(ta.states[i].v)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("rk4 shows fourth-order convergence on the polar affine problem") {
  // v = 1 + it in polar form: q = sqrt(1+t^2), theta = atan(t), C = -1.
  PolarState p0;
  p0.q = 1.0;
  p0.dq = 0.0;
  p0.ddq = 1.0;
  p0.dtheta = 1.0;
  double prev = 0.0;
  for (double h : {1e-2, 5e-3}) {
    SolverSettings st;
    st.method = StepMethod::rk4_fixed;
    st.step = h;
    const PolarTrajectory t = integrate_polar(p0, -1.0, {0.0, 10.0}, st, 0.05);
    double worst = 0.0;
    for (std::size_t i = 0; i < t.times.size(); ++i) {
      const double tt = t.times[i];
      worst = std::max(worst, std::abs(t.states[i].q - std::sqrt(1.0 + tt * tt)));
    }
    if (prev > 0.0) CHECK(prev / worst >= 14.0);
    prev = worst;
  }
}

TEST_CASE("reconstruct_group: zero velocity holds the start point") {
  AlgebraTrajectory vel;
  for (int k = 0; k <= 10; ++k) {
    vel.times.push_back(0.1 * k);
    vel.states.push_back({});
  }
  const Quat x0 = random_rotation();
  const GroupTrajectory x = reconstruct_group(vel, x0);
  for (const auto& g : x.points) CHECK((g.coeffs() - x0.coeffs()).norm() <= 1e-14);
}

TEST_CASE("reconstruct_group: constant velocity matches the exponential") {
  AlgebraTrajectory vel;
  for (int k = 0; k <= 1000; ++k) {
    AlgebraQuadraticState s;
    s.t = 0.01 * k;
    s.V = Vec3::UnitX();
    vel.times.push_back(s.t);
    vel.states.push_back(s);
  }
  const Quat x0 = random_rotation();
  const GroupTrajectory x = reconstruct_group(vel, x0);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.times.size(); ++i) {
    const Quat ref = x0 * exp_map(x.times[i] * Vec3::UnitX());
    worst = std::max(worst, (x.points[i].coeffs() - ref.coeffs()).norm());
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("reconstruct_group: x' = x V under a finite-difference check") {
  const ExampleConfig ex = builtin_example(2);
  const ComplexTrajectory vel = integrate_complex(ex.s0, ex.C, {0.0, 4.0}, {}, 1e-3);
  const GroupTrajectory x = reconstruct_group(vel);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < x.points.size(); ++i) {
    const double h = x.times[i + 1] - x.times[i - 1];
    const Eigen::Vector4d fd = (x.points[i + 1].coeffs() - x.points[i - 1].coeffs()) / h;
    const Complex v = vel.states[i].v;
    const Quat rhs = x.points[i] * Quat(0.0, 0.5 * v.real(), 0.5 * v.imag(), 0.0);
    worst = std::max(worst, (fd - rhs.coeffs()).norm());
  }
  CHECK(worst <= 1e-4);
}

TEST_CASE("reconstruct_group: every point is a unit quaternion") {
  const ExampleConfig ex = builtin_example(2);
  const ComplexTrajectory vel = integrate_complex(ex.s0, ex.C, {0.0, 20.0});
  const GroupTrajectory x = reconstruct_group(vel);
  double worst = 0.0;
  for (const auto& g : x.points) worst = std::max(worst, std::abs(g.norm() - 1.0));
  CHECK(worst <= 1e-9);
}

TEST_CASE("reconstruct_group: fourth-order in the substep rotation cap") {
  AlgebraTrajectory traj;
  traj.meta.Ctilde = Vec3::UnitZ();
  for (int k = 0; k <= 20; ++k) {
    const auto [s, C] = linear_quadratic(Vec3::UnitX(), Vec3::UnitY(), 0.5 * k);
    traj.times.push_back(0.5 * k);
    traj.states.push_back(s);
  }
  const GroupTrajectory ref = reconstruct_group(traj, Quat::Identity(), 0.02);
  double prev = 0.0;
  for (double cap : {1.0, 0.5}) {
    const GroupTrajectory x = reconstruct_group(traj, Quat::Identity(), cap);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.points.size(); ++i) {
      worst = std::max(worst, (x.points[i].coeffs() - ref.points[i].coeffs()).norm());
    }
    if (prev > 0.0) CHECK(prev / worst >= 10.0);
    prev = worst;
  }
}

TEST_CASE("stereographic_project: anchor points and the pole") {
  CHECK((stereographic_project(Quat(1, 0, 0, 0)) - Vec3(1, 0, 0)).norm() == 0.0);
  CHECK(stereographic_project(Quat(0, 0, 0, -1)).norm() == 0.0);
  CHECK_THROWS_AS((void)stereographic_project(Quat(0, 0, 0, 1)), PoleProjection);
}
