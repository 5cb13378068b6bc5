#include "liequad/dynamics.hpp"

#include <cmath>

namespace liequad {

namespace {
constexpr Complex kI{0.0, 1.0};
}

std::array<Complex, 3> quadratic_rhs(const QuadraticState& s, double C) {
  const Complex cubic = 0.5 * s.v * (std::conj(s.dv) * s.v - s.dv * std::conj(s.v));
  return {s.dv, s.ddv, cubic - kI * C * s.v};
}

std::array<double, 6> polar_rhs(const PolarState& s, double C) {
  if (s.q <= kQMin) {
    throw RadialUnderflow("polar_rhs: q = " + std::to_string(s.q) + " <= q_min");
  }
  const double dddq = 3.0 * s.dq * s.dtheta * s.dtheta + 3.0 * s.q * s.ddtheta * s.dtheta;
  const double dddtheta = (-3.0 * s.dq * s.ddtheta - 3.0 * s.ddq * s.dtheta +
                           s.q * s.dtheta * s.dtheta * s.dtheta -
                           s.q * s.q * s.q * s.dtheta - C * s.q) /
                          s.q;
  return {s.dq, s.ddq, dddq, s.dtheta, s.ddtheta, dddtheta};
}

std::array<Vec3, 3> symmetric_rhs(const AlgebraQuadraticState& s, const Vec3& Ctilde,
                                  const BracketConvention& conv) {
  if (std::abs(Ctilde.x()) > kHorizontalTol || std::abs(Ctilde.y()) > kHorizontalTol) {
    throw InvalidArgument("symmetric_rhs: Ctilde must be vertical (a1 = a2 = 0)");
  }
  const Vec3 dddV = bracket(bracket(s.dV, s.V, conv), s.V, conv) + bracket(Ctilde, s.V, conv);
  return {s.dV, s.ddV, dddV};
}

Vec3 riemannian_quadratic_rhs(const Vec3& V, const Vec3& dV, const Vec3& Cvec,
                              const BracketConvention& conv) {
  return bracket(dV, V, conv) + Cvec;
}

std::pair<AlgebraQuadraticState, Vec3> linear_quadratic(const Vec3& V0, const Vec3& V1,
                                                        double t,
                                                        const BracketConvention& conv) {
  AlgebraQuadraticState s;
  s.t = t;
  s.V = V0 + t * V1;
  s.dV = V1;
  s.ddV = Vec3::Zero();
  return {s, bracket(V0, V1, conv)};
}

Vec3 vertical_constant(double C, const BracketConvention& conv) {
  return Vec3(0.0, 0.0, -C / conv.kappa);
}

AlgebraQuadraticState to_algebra(const QuadraticState& s) {
  AlgebraQuadraticState a;
  a.t = s.t;
  a.V = from_complex(s.v);
  a.dV = from_complex(s.dv);
  a.ddV = from_complex(s.ddv);
  return a;
}

QuadraticState to_quadratic(const AlgebraQuadraticState& s) {
  QuadraticState q;
  q.t = s.t;
  q.v = to_complex(s.V);
  q.dv = to_complex(s.dV);
  q.ddv = to_complex(s.ddV);
  return q;
}

PolarState to_polar(const QuadraticState& s) {
  return to_polar(s, std::arg(s.v));
}

PolarState to_polar(const QuadraticState& s, double theta) {
  const double q = std::abs(s.v);
  if (q <= kQMin) {
    throw RadialUnderflow("to_polar: |v| <= q_min");
  }
  // Rotate the frame so the state sits on the positive real axis, then read
  // off the radial/transverse decomposition of the derivatives.
  const Complex phase = std::polar(1.0, -theta);
  const Complex w1 = s.dv * phase;
  const Complex w2 = s.ddv * phase;

  PolarState p;
  p.t = s.t;
  p.q = q;
  p.theta = theta;
  p.dq = w1.real();
  p.dtheta = w1.imag() / q;
  p.ddq = w2.real() + q * p.dtheta * p.dtheta;
  p.ddtheta = (w2.imag() - 2.0 * p.dq * p.dtheta) / q;
  return p;
}

QuadraticState to_cartesian(const PolarState& s) {
  const Complex phase = std::polar(1.0, s.theta);
  QuadraticState c;
  c.t = s.t;
  c.v = s.q * phase;
  c.dv = (Complex(s.dq, s.q * s.dtheta)) * phase;
  c.ddv = (Complex(s.ddq - s.q * s.dtheta * s.dtheta,
                   2.0 * s.dq * s.dtheta + s.q * s.ddtheta)) *
          phase;
  return c;
}

}  // namespace liequad
