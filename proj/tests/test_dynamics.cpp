#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

#include "liequad/dynamics.hpp"

using namespace liequad;
using namespace liequad::testing;

namespace {

QuadraticState make_state(Complex v, Complex dv, Complex ddv) {
  QuadraticState s;
  s.v = v;
  s.dv = dv;
  s.ddv = ddv;
  return s;
}

AlgebraQuadraticState make_algebra(const Vec3& V, const Vec3& dV, const Vec3& ddV) {
  AlgebraQuadraticState s;
  s.V = V;
  s.dV = dV;
  s.ddV = ddV;
  return s;
}

PolarState random_polar() {
  PolarState p;
  p.q = uniform(0.5, 3.0);
  p.dq = uniform(-2, 2);
  p.ddq = uniform(-2, 2);
  p.theta = uniform(-3, 3);
  p.dtheta = uniform(-2, 2);
  p.ddtheta = uniform(-2, 2);
  return p;
}

}  // namespace

TEST_CASE("quadratic_rhs: constants solve the null equation") {
  const auto d = quadratic_rhs(make_state({1, 0}, {0, 0}, {0, 0}), 0.0);
  CHECK(d[0] == Complex(0, 0));
  CHECK(d[1] == Complex(0, 0));
  CHECK(d[2] == Complex(0, 0));
}

TEST_CASE("quadratic_rhs: curvature term -iCv") {
  const auto d = quadratic_rhs(make_state({1, 0}, {0, 0}, {0, 0}), 1.0);
  CHECK(d[2] == Complex(0, -1));
}

TEST_CASE("quadratic_rhs: cubic term, one-line complex oracle") {
  // v=1, dv=i: 1/2 * 1 * ((-i)(1) - (i)(1)) = -i
  const Complex v{1, 0}, dv{0, 1};
  const Complex oracle = 0.5 * v * (std::conj(dv) * v - dv * std::conj(v));
  CHECK(oracle == Complex(0, -1));
  const auto d = quadratic_rhs(make_state(v, dv, {0, 0}), 0.0);
  CHECK(d[2] == oracle);
}

TEST_CASE("quadratic_rhs: rotational equivariance of the null equation") {
  for (int i = 0; i < 50; ++i) {
    QuadraticState s = make_state({uniform(-2, 2), uniform(-2, 2)},
                                  {uniform(-2, 2), uniform(-2, 2)},
                                  {uniform(-2, 2), uniform(-2, 2)});
    const Complex phase = std::polar(1.0, uniform(-3, 3));
    QuadraticState r = make_state(phase * s.v, phase * s.dv, phase * s.ddv);
    const auto d = quadratic_rhs(s, 0.0);
    const auto dr = quadratic_rhs(r, 0.0);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(dr[k] - phase * d[k]) <= 1e-13);
  }
}

TEST_CASE("polar_rhs: stationary point of the null system") {
  PolarState p;  // q = 1, all derivatives zero
  const auto d = polar_rhs(p, 0.0);
  for (double x : d) CHECK(x == 0.0);
}

TEST_CASE("polar_rhs: curvature enters only the angular jerk") {
  PolarState p;
  const auto d = polar_rhs(p, 1.0);
  CHECK(d[5] == -1.0);
  for (int k = 0; k < 5; ++k) CHECK(d[k] == 0.0);
}

TEST_CASE("polar_rhs: radial underflow guard") {
  PolarState p;
  p.q = 1e-7;
  CHECK_THROWS_AS((void)polar_rhs(p, 0.0), RadialUnderflow);
}

TEST_CASE("polar_rhs: agrees with quadratic_rhs through the polar change of variables") {
  for (int i = 0; i < 100; ++i) {
    const PolarState p = random_polar();
    const double C = uniform(-2, 2);
    const QuadraticState c = to_cartesian(p);
    const auto dc = quadratic_rhs(c, C);
    // q''' and theta''' extracted from v''' in the rotated frame
    const Complex w3 = dc[2] * std::polar(1.0, -p.theta);
    const double dddq_oracle =
        w3.real() + 3.0 * p.dq * p.dtheta * p.dtheta + 3.0 * p.q * p.dtheta * p.ddtheta;
    const double dddtheta_oracle =
        (w3.imag() - 3.0 * p.ddq * p.dtheta - 3.0 * p.dq * p.ddtheta +
         p.q * p.dtheta * p.dtheta * p.dtheta) /
        p.q;
    const auto dp = polar_rhs(p, C);
    CHECK(dp[2] == doctest::Approx(dddq_oracle).epsilon(1e-10));
    CHECK(dp[5] == doctest::Approx(dddtheta_oracle).epsilon(1e-10));
  }
}

TEST_CASE("to_polar/to_cartesian: round trip") {
  for (int i = 0; i < 100; ++i) {
    const PolarState p = random_polar();
    const PolarState back = to_polar(to_cartesian(p), p.theta);
    CHECK(back.q == doctest::Approx(p.q).epsilon(1e-12));
    CHECK(back.dq == doctest::Approx(p.dq).epsilon(1e-10));
    CHECK(back.ddq == doctest::Approx(p.ddq).epsilon(1e-10));
    CHECK(back.theta == doctest::Approx(p.theta).epsilon(1e-12));
    CHECK(back.dtheta == doctest::Approx(p.dtheta).epsilon(1e-10));
    CHECK(back.ddtheta == doctest::Approx(p.ddtheta).epsilon(1e-10));
  }
  QuadraticState tiny;
  tiny.v = {1e-9, 0};
  CHECK_THROWS_AS((void)to_polar(tiny), RadialUnderflow);
}

TEST_CASE("symmetric_rhs: rest state") {
  const auto d = symmetric_rhs(make_algebra(Vec3::UnitX(), Vec3::Zero(), Vec3::Zero()),
                               Vec3::Zero());
  CHECK(d[2].norm() == 0.0);
}

TEST_CASE("symmetric_rhs: affine balance [[e2,e1],e1] + [e3,e1] = 0") {
  const auto d = symmetric_rhs(make_algebra(Vec3::UnitX(), Vec3::UnitY(), Vec3::Zero()),
                               Vec3::UnitZ());
  CHECK((bracket(bracket(Vec3::UnitY(), Vec3::UnitX()), Vec3::UnitX()) + Vec3::UnitY())
            .norm() == 0.0);
  CHECK(d[2].norm() == 0.0);
}

TEST_CASE("symmetric_rhs: vertical constant precondition") {
  CHECK_THROWS_AS((void)symmetric_rhs(make_algebra(Vec3::UnitX(), Vec3::Zero(), Vec3::Zero()),
                                      Vec3::UnitX()),
                  InvalidArgument);
}

TEST_CASE("symmetric_rhs: matches quadratic_rhs on horizontal states") {
  for (int i = 0; i < 100; ++i) {
    const double C = uniform(-2, 2);
    const Vec3 V = random_horizontal(), dV = random_horizontal(), ddV = random_horizontal();
    const auto da = symmetric_rhs(make_algebra(V, dV, ddV), vertical_constant(C));
    const auto dc = quadratic_rhs(
        make_state(to_complex(V), to_complex(dV), to_complex(ddV)), C);
    CHECK(std::abs(to_complex(da[2]) - dc[2]) <= 1e-12);
  }
}

TEST_CASE("symmetric_rhs: horizontality is exact and <V''', V> vanishes") {
  for (int i = 0; i < 100; ++i) {
    const AlgebraQuadraticState s =
        make_algebra(random_horizontal(), random_horizontal(), random_horizontal());
    const Vec3 Ct(0, 0, uniform(-2, 2));
    const auto d = symmetric_rhs(s, Ct);
    CHECK(d[0].z() == 0.0);
    CHECK(d[1].z() == 0.0);
    CHECK(d[2].z() == 0.0);
    CHECK(std::abs(inner(d[2], s.V)) <= 1e-12);
  }
}

TEST_CASE("riemannian_quadratic_rhs: bracket plus constant") {
  CHECK(riemannian_quadratic_rhs(random_vec(), Vec3::Zero(), Vec3::Zero()).norm() == 0.0);
  CHECK((riemannian_quadratic_rhs(Vec3::UnitX(), Vec3::UnitY(), Vec3::Zero()) +
         Vec3::UnitZ())
            .norm() == 0.0);
  CHECK(riemannian_quadratic_rhs(Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()).norm() ==
        0.0);
}

TEST_CASE("linear_quadratic: affine state and matched constant") {
  const auto [s0, Ct] = linear_quadratic(Vec3::UnitX(), Vec3::UnitY(), 0.0);
  CHECK((s0.V - Vec3::UnitX()).norm() == 0.0);
  CHECK((s0.dV - Vec3::UnitY()).norm() == 0.0);
  CHECK(s0.ddV.norm() == 0.0);
  CHECK((Ct - Vec3::UnitZ()).norm() == 0.0);

  const auto [s5, Ct5] = linear_quadratic(Vec3::UnitX(), Vec3::UnitY(), 5.0);
  CHECK((s5.V - (Vec3::UnitX() + 5.0 * Vec3::UnitY())).norm() == 0.0);

  for (int k = 0; k <= 10; ++k) {
    const auto [s, C] = linear_quadratic(Vec3::UnitX(), Vec3::UnitY(), double(k));
    const auto d = symmetric_rhs(s, C);
    CHECK(d[2].norm() == 0.0);
  }
}

TEST_CASE("vertical_constant: bracket action reproduces -iCv") {
  for (int i = 0; i < 50; ++i) {
    const double C = uniform(-3, 3);
    const Vec3 V = random_horizontal();
    const Vec3 b = bracket(vertical_constant(C), V);
    const Complex expected = Complex(0, -C) * to_complex(V);
    CHECK(std::abs(to_complex(b) - expected) <= 1e-14);
  }
}

TEST_CASE("to_algebra/to_quadratic round trip") {
  const QuadraticState s = make_state({1.5, -0.25}, {0.0, 2.0}, {-5.0, -5.0});
  const QuadraticState back = to_quadratic(to_algebra(s));
  CHECK(back.v == s.v);
  CHECK(back.dv == s.dv);
  CHECK(back.ddv == s.ddv);
}
