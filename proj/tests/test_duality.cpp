#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

#include "liequad/builtin_examples.hpp"
#include "liequad/duality.hpp"
#include "liequad/integrate.hpp"

using namespace liequad;
using namespace liequad::testing;

namespace {

struct DualPipeline {
  AlgebraTrajectory vel;
  GroupTrajectory x;
  AlgebraTrajectory W;
  Vec3 D;
};

DualPipeline run_pipeline(const ComplexTrajectory& traj) {
  DualPipeline p;
  p.vel = to_algebra_trajectory(traj);
  p.x = reconstruct_group(p.vel);
  p.W = dual_curve(p.x, p.vel);
  p.D = dual_constant(p.vel.states.front().V, p.vel.states.front().dV,
                      p.vel.states.front().ddV);
  return p;
}

const ComplexTrajectory& example2_traj() {
  static const ComplexTrajectory t = [] {
    const ExampleConfig ex = builtin_example(2);
    return integrate_complex(ex.s0, ex.C, {0.0, 20.0}, {}, 0.002);
  }();
  return t;
}

}  // namespace

TEST_CASE("dual_curve: zero velocity dualizes to zero") {
  AlgebraTrajectory vel;
  for (int k = 0; k <= 10; ++k) {
    vel.times.push_back(0.1 * k);
    vel.states.push_back({});
  }
  const GroupTrajectory x = reconstruct_group(vel);
  const AlgebraTrajectory W = dual_curve(x, vel);
  for (const auto& s : W.states) {
    CHECK(s.V.norm() == 0.0);
    CHECK(s.dV.norm() == 0.0);
    CHECK(s.ddV.norm() == 0.0);
  }
}

TEST_CASE("dual_curve: signed values at t = 0") {
  const DualPipeline p = run_pipeline(example2_traj());
  const auto& v0 = p.vel.states.front();
  const auto& w0 = p.W.states.front();
  CHECK((w0.V + v0.V).norm() <= 1e-12);
  CHECK((w0.dV + v0.dV).norm() <= 1e-12);
  CHECK((w0.ddV + (v0.ddV + bracket(v0.V, v0.dV))).norm() <= 1e-12);
}

TEST_CASE("dual_curve: a constant generator dualizes to its negative") {
  AlgebraTrajectory vel;
  for (int k = 0; k <= 500; ++k) {
    AlgebraQuadraticState s;
    s.t = 0.01 * k;
    s.V = Vec3::UnitX();
    vel.times.push_back(s.t);
    vel.states.push_back(s);
  }
  const GroupTrajectory x = reconstruct_group(vel);
  const AlgebraTrajectory W = dual_curve(x, vel);
  for (const auto& s : W.states) {
    CHECK((s.V + Vec3::UnitX()).norm() <= 1e-12);
    CHECK(s.dV.norm() <= 1e-12);
    CHECK(s.ddV.norm() <= 1e-12);
  }
}

TEST_CASE("dual_curve: grid and base-point preconditions") {
  const DualPipeline p = run_pipeline(example2_traj());
  GroupTrajectory shifted = p.x;
  shifted.times.back() += 0.5;
  CHECK_THROWS_AS((void)dual_curve(shifted, p.vel), GridMismatch);

  GroupTrajectory offset = p.x;
  offset.points.front() = exp_map(Vec3(0.1, 0, 0));
  CHECK_THROWS_AS((void)dual_curve(offset, p.vel), InvalidArgument);
}

TEST_CASE("dual_curve: norms match the source pointwise") {
  const DualPipeline p = run_pipeline(example2_traj());
  for (std::size_t i = 0; i < p.W.states.size(); i += 97) {
    CHECK(std::abs(p.W.states[i].V.norm() - p.vel.states[i].V.norm()) <= 1e-12);
  }
}

TEST_CASE("dual_constant: the value that closes W'' - 2[W', W]") {
  CHECK(dual_constant(Vec3::Zero(), Vec3::Zero(), Vec3::Zero()).norm() == 0.0);
  CHECK((dual_constant(Vec3::UnitX(), Vec3::UnitY(), Vec3::Zero()) - Vec3::UnitZ())
            .norm() == 0.0);
  // parallel V and V': the bracket vanishes, leaving -V''(0)
  const Vec3 V0(2, -1, 0);
  CHECK((dual_constant(V0, V0, Vec3(0, 5, 0)) + Vec3(0, 5, 0)).norm() == 0.0);

  // oracle: evaluate W'' - 2[W', W] at t = 0 from the dual-curve values
  const DualPipeline p = run_pipeline(example2_traj());
  const auto& w0 = p.W.states.front();
  const Vec3 oracle = w0.ddV - 2.0 * bracket(w0.dV, w0.V);
  CHECK((p.D - oracle).norm() <= 1e-12);
}

TEST_CASE("verify_dual_equation: exact affine null source") {
  // v = 1 + 2t is a closed-form null solution (real line, zero constant)
  QuadraticState s0;
  s0.v = {1, 0};
  s0.dv = {2, 0};
  const ComplexTrajectory t = integrate_complex(s0, 0.0, {0.0, 10.0});
  const DualPipeline p = run_pipeline(t);
  CHECK(p.D.norm() <= 1e-12);
  CHECK(verify_dual_equation(p.W, p.D) <= 1e-7);
}

TEST_CASE("verify_dual_equation: example 2 satisfies the dual equation") {
  const DualPipeline p = run_pipeline(example2_traj());
  CHECK(verify_dual_equation(p.W, p.D) <= 1e-5);
}

TEST_CASE("verify_dual_equation: residual tracks the integrator tolerance") {
  const ExampleConfig ex = builtin_example(2);
  SolverSettings loose;
  loose.abs_tol = loose.rel_tol = 1e-6;
  const ComplexTrajectory tl = integrate_complex(ex.s0, ex.C, {0.0, 20.0}, loose, 0.002);
  const DualPipeline pl = run_pipeline(tl);
  const DualPipeline pt = run_pipeline(example2_traj());
  const double rl = verify_dual_equation(pl.W, pl.D);
  const double rt = verify_dual_equation(pt.W, pt.D);
  CHECK(rl / rt >= 1e2);
}

TEST_CASE("rescale_to_riemannian: scales and residual relation") {
  const DualPipeline p = run_pipeline(example2_traj());

  const auto [t1, C1] = rescale_to_riemannian(p.W, 1.0, p.D);
  CHECK((C1 - 2.0 * p.D).norm() == 0.0);

  const auto [t2, C2] = rescale_to_riemannian(p.W, 0.5, p.D);
  CHECK((C2 - 0.25 * p.D).norm() <= 1e-15);

  CHECK_THROWS_AS((void)rescale_to_riemannian(p.W, 0.0, p.D), InvalidArgument);

  // sup ||V'' - [V',V] - C|| = 2 b^3 sup ||W'' - 2[W',W] - D|| exactly
  const double thm = verify_dual_equation(p.W, p.D);
  for (int i = 0; i < 5; ++i) {
    const double b = uniform(0.5, 2.0);
    const auto [tb, Cb] = rescale_to_riemannian(p.W, b, p.D);
    const double res = riemannian_residual(tb, Cb);
    CHECK(res == doctest::Approx(2.0 * b * b * b * thm).epsilon(1e-9));
  }
}

TEST_CASE("null_dual_linearity: zero and constant sources") {
  AlgebraTrajectory vel;
  for (int k = 0; k <= 100; ++k) {
    AlgebraQuadraticState s;
    s.t = 0.1 * k;
    vel.times.push_back(s.t);
    vel.states.push_back(s);
  }
  const GroupTrajectory x0 = reconstruct_group(vel);
  const LinearFit zero = null_dual_linearity(x0, vel);
  CHECK(zero.W0.norm() <= 1e-14);
  CHECK(zero.W1.norm() <= 1e-14);
  CHECK(zero.max_residual <= 1e-14);

  for (auto& s : vel.states) s.V = Vec3::UnitX();
  const GroupTrajectory x1 = reconstruct_group(vel);
  const LinearFit cst = null_dual_linearity(x1, vel);
  CHECK((cst.W0 + Vec3::UnitX()).norm() <= 1e-12);
  CHECK(cst.W1.norm() <= 1e-12);
}

TEST_CASE("null_dual_linearity: second-order null source is exactly affine") {
  const AlgebraTrajectory V =
      integrate_riemannian(Vec3::UnitX(), Vec3::UnitZ(), Vec3::Zero(), {0.0, 10.0});
  const GroupTrajectory x = reconstruct_group(V);
  const LinearFit fit = null_dual_linearity(x, V);
  CHECK(fit.max_residual <= 1e-6);
  // W(0) = -V(0) and W'(0) = -V'(0) pin the affine coefficients
  CHECK((fit.W0 + Vec3::UnitX()).norm() <= 1e-5);
  CHECK((fit.W1 + Vec3::UnitZ()).norm() <= 1e-5);
}
