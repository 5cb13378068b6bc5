#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "liequad/errors.hpp"

namespace liequad {

// Coordinates in the orthonormal basis e1, e2, e3 of su(2); e1, e2 span the
// horizontal plane, e3 its orthogonal complement.
using Vec3 = Eigen::Vector3d;

// SU(2) element as a unit quaternion (w, x, y, z).
using Quat = Eigen::Quaterniond;

using Complex = std::complex<double>;

// |v| below this: the direction v/|v| is treated as undefined.
inline constexpr double kQMin = 1e-6;

// Tolerance for the horizontality check in to_complex.
inline constexpr double kHorizontalTol = 1e-12;

// Coordinate bracket scale: [X, Y] := kappa * (x cross y).
//
// kappa = 1 gives structure constant +1 ([e1,e2] = e3), the normalization
// every equation in this library is written in. The matrix basis
// i*sigma_k/sqrt(2) carries structure constant -sqrt(2) instead; kappa
// exists so that convention can be audited against the same formulas.
struct BracketConvention {
  double kappa = 1.0;
};

inline Vec3 bracket(const Vec3& x, const Vec3& y, const BracketConvention& conv = {}) {
  return conv.kappa * x.cross(y);
}

// Bi-invariant inner product; the basis e1, e2, e3 is orthonormal under it.
inline double inner(const Vec3& x, const Vec3& y) { return x.dot(y); }

// Ad(g)X = g X g^-1, realized as the rotation of X's coordinates by g.
Vec3 adjoint(const Quat& g, const Vec3& x);

// Group exponential as a unit quaternion. Normalized so that
// d/dt Ad(exp_map(tX))Y at t = 0 equals bracket(X, Y) with kappa = 1.
Quat exp_map(const Vec3& x);

// Identification of the horizontal plane with C: v = a1 + i a2.
// Throws NonHorizontal when |a3| exceeds kHorizontalTol.
Complex to_complex(const Vec3& x);

inline Vec3 from_complex(const Complex& v) { return Vec3(v.real(), v.imag(), 0.0); }

// Continuous angle along a sequence of nonzero samples: theta_k with
// exp(i theta_k) = v_k/|v_k| and |theta_{k+1} - theta_k| < pi.
//
// theta0, when given, must point at the first sample's direction (any branch
// works; [0, 2pi) is the conventional choice). Without it the principal
// value atan2(Im v_0, Re v_0) is used.
//
// Throws ZeroVelocity if any |v_k| <= kQMin, UndersampledRotation if a
// consecutive direction jump reaches pi - 0.1.
std::vector<double> angle_lift(std::span<const Complex> samples,
                               std::optional<double> theta0 = std::nullopt);

}  // namespace liequad
