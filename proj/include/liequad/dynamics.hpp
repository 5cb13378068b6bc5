#pragma once

#include <array>
#include <utility>

#include "liequad/algebra.hpp"

namespace liequad {

// Third-order state of the horizontal velocity in complex form.
struct QuadraticState {
  double t = 0.0;
  Complex v{0.0, 0.0};
  Complex dv{0.0, 0.0};
  Complex ddv{0.0, 0.0};
};

// Radial/angular form of the same state, valid while q > q_min.
struct PolarState {
  double t = 0.0;
  double q = 1.0, dq = 0.0, ddq = 0.0;
  double theta = 0.0, dtheta = 0.0, ddtheta = 0.0;
};

// Full three-coordinate third-order state.
struct AlgebraQuadraticState {
  double t = 0.0;
  Vec3 V = Vec3::Zero();
  Vec3 dV = Vec3::Zero();
  Vec3 ddV = Vec3::Zero();
};

// v''' = 1/2 v (conj(v') v - v' conj(v)) - i C v.
// Returns (v', v'', v''').
std::array<Complex, 3> quadratic_rhs(const QuadraticState& s, double C);

// First derivatives of (q, q', q'', theta, theta', theta'') under
//   q''' = 3 q' theta'^2 + 3 q theta'' theta'
//   theta''' = (-3 q' theta'' - 3 q'' theta' + q theta'^3 - q^3 theta' - C q) / q.
// Throws RadialUnderflow when q <= q_min.
std::array<double, 6> polar_rhs(const PolarState& s, double C);

// V''' = [[V', V], V] + [Ctilde, V] under the given bracket convention.
// Ctilde must lie in the vertical line (a1 = a2 = 0).
// Returns (V', V'', V''').
std::array<Vec3, 3> symmetric_rhs(const AlgebraQuadraticState& s, const Vec3& Ctilde,
                                  const BracketConvention& conv = {});

// V'' = [V', V] + Cvec.
Vec3 riemannian_quadratic_rhs(const Vec3& V, const Vec3& dV, const Vec3& Cvec,
                              const BracketConvention& conv = {});

// Exact affine solution V0 + t V1 with its matching vertical constant
// Ctilde = bracket(V0, V1); substituting into symmetric_rhs gives a zero
// third derivative identically.
std::pair<AlgebraQuadraticState, Vec3> linear_quadratic(const Vec3& V0, const Vec3& V1,
                                                        double t,
                                                        const BracketConvention& conv = {});

// The vertical constant whose bracket term reproduces -iCv of the complex
// equation: [vertical_constant(C), V] = -i C v for horizontal V. With
// kappa = 1 this is -C e3, since ad(e3) acts as multiplication by +i.
Vec3 vertical_constant(double C, const BracketConvention& conv = {});

// ---- conversions ------------------------------------------------------

AlgebraQuadraticState to_algebra(const QuadraticState& s);

// Requires all three slots horizontal.
QuadraticState to_quadratic(const AlgebraQuadraticState& s);

// theta selects the angle branch at s.t; defaults to the principal value.
// Throws RadialUnderflow when |v| <= q_min.
PolarState to_polar(const QuadraticState& s);
PolarState to_polar(const QuadraticState& s, double theta);

QuadraticState to_cartesian(const PolarState& s);

}  // namespace liequad
