#include "liequad/algebra.hpp"

#include <cmath>

namespace liequad {

Vec3 adjoint(const Quat& g, const Vec3& x) {
  // Quaternion rotation of the coordinate vector; preserves inner and bracket.
  return g * x;
}

Quat exp_map(const Vec3& x) {
  const double theta = x.norm();
  // sin(theta/2)/theta, series near zero.
  double s;
  if (theta < 1e-8) {
    s = 0.5 - theta * theta / 48.0;
  } else {
    s = std::sin(0.5 * theta) / theta;
  }
  return Quat(std::cos(0.5 * theta), s * x.x(), s * x.y(), s * x.z());
}

Complex to_complex(const Vec3& x) {
  if (std::abs(x.z()) > kHorizontalTol) {
    throw NonHorizontal("to_complex: |a3| = " + std::to_string(std::abs(x.z())) +
                        " exceeds horizontality tolerance");
  }
  return Complex(x.x(), x.y());
}

std::vector<double> angle_lift(std::span<const Complex> samples,
                               std::optional<double> theta0) {
  std::vector<double> theta;
  theta.reserve(samples.size());
  if (samples.empty()) return theta;

  auto direction = [](const Complex& v) {
    const double r = std::abs(v);
    if (r <= kQMin) {
      throw ZeroVelocity("angle_lift: |v| = " + std::to_string(r) + " <= q_min");
    }
    return v / r;
  };

  Complex w_prev = direction(samples[0]);
  double th = theta0.value_or(std::atan2(w_prev.imag(), w_prev.real()));
  if (theta0) {
    // Supplied branch must point at the first sample's direction.
    const Complex mismatch = std::polar(1.0, *theta0) - w_prev;
    if (std::abs(mismatch) > 1e-6) {
      throw InvalidArgument("angle_lift: theta0 does not match the first sample's direction");
    }
  }
  theta.push_back(th);

  constexpr double kJumpLimit = M_PI - 0.1;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const Complex w = direction(samples[k]);
    // Principal rotation from the previous direction to this one.
    const Complex rel = w * std::conj(w_prev);
    const double delta = std::atan2(rel.imag(), rel.real());
    if (std::abs(delta) >= kJumpLimit) {
      throw UndersampledRotation("angle_lift: direction jump of " + std::to_string(delta) +
                                 " rad between consecutive samples");
    }
    th += delta;
    theta.push_back(th);
    w_prev = w;
  }
  return theta;
}

}  // namespace liequad
