#include "liequad/duality.hpp"

#include <cmath>

namespace liequad {

namespace {

void require_same_grid(const GroupTrajectory& x, const AlgebraTrajectory& vel) {
  if (x.times.size() != vel.times.size()) {
    throw GridMismatch("dual_curve: group and velocity grids differ in length");
  }
  for (std::size_t i = 0; i < x.times.size(); ++i) {
    if (std::abs(x.times[i] - vel.times[i]) > 1e-12 * std::max(1.0, std::abs(x.times[i]))) {
      throw GridMismatch("dual_curve: group and velocity grids differ at index " +
                         std::to_string(i));
    }
  }
}

}  // namespace

AlgebraTrajectory dual_curve(const GroupTrajectory& x, const AlgebraTrajectory& vel,
                             const BracketConvention& conv) {
  require_same_grid(x, vel);
  if ((x.points.front().coeffs() - Quat::Identity().coeffs()).norm() > 1e-9) {
    throw InvalidArgument("dual_curve: group curve must start at the identity");
  }

  AlgebraTrajectory out;
  out.times = vel.times;
  out.meta = vel.meta;
  out.meta.form = SystemForm::dual_curve;
  out.states.reserve(vel.states.size());
  for (std::size_t i = 0; i < vel.states.size(); ++i) {
    const auto& s = vel.states[i];
    const Quat& g = x.points[i];
    AlgebraQuadraticState w;
    w.t = s.t;
    w.V = -adjoint(g, s.V);
    w.dV = -adjoint(g, s.dV);
    w.ddV = -adjoint(g, s.ddV + bracket(s.V, s.dV, conv));
    out.states.push_back(w);
  }
  return out;
}

Vec3 dual_constant(const Vec3& V0, const Vec3& dV0, const Vec3& ddV0,
                   const BracketConvention& conv) {
  return -ddV0 + bracket(V0, dV0, conv);
}

double verify_dual_equation(const AlgebraTrajectory& W, const Vec3& Dtilde,
                            const BracketConvention& conv) {
  double worst = 0.0;
  for (const auto& s : W.states) {
    const Vec3 r = s.ddV - 2.0 * bracket(s.dV, s.V, conv) - Dtilde;
    worst = std::max(worst, r.norm());
  }
  return worst;
}

std::pair<AlgebraTrajectory, Vec3> rescale_to_riemannian(const AlgebraTrajectory& W,
                                                         double b, const Vec3& Dtilde,
                                                         const BracketConvention& conv) {
  if (!(b > 0.0)) throw InvalidArgument("rescale_to_riemannian: b must be > 0");
  (void)conv;
  const double a = 2.0 * b;
  const Vec3 Cvec = 2.0 * b * b * b * Dtilde;

  AlgebraTrajectory out;
  out.meta = W.meta;
  out.meta.form = SystemForm::riemannian_quadratic;
  out.meta.Ctilde = Cvec;
  out.times.reserve(W.times.size());
  out.states.reserve(W.states.size());
  for (std::size_t i = 0; i < W.times.size(); ++i) {
    // V(t) = a W(b t): sample bt on W's grid, so t = grid/b stays in span.
    const auto& s = W.states[i];
    AlgebraQuadraticState v;
    v.t = W.times[i] / b;
    v.V = a * s.V;
    v.dV = a * b * s.dV;
    v.ddV = a * b * b * s.ddV;
    out.states.push_back(v);
    out.times.push_back(v.t);
  }
  return {out, Cvec};
}

double riemannian_residual(const AlgebraTrajectory& traj, const Vec3& Cvec,
                           const BracketConvention& conv) {
  double worst = 0.0;
  for (const auto& s : traj.states) {
    const Vec3 r = s.ddV - riemannian_quadratic_rhs(s.V, s.dV, Cvec, conv);
    worst = std::max(worst, r.norm());
  }
  return worst;
}

LinearFit null_dual_linearity(const GroupTrajectory& x, const AlgebraTrajectory& V) {
  require_same_grid(x, V);
  const std::size_t n = V.states.size();
  if (n < 2) throw InvalidArgument("null_dual_linearity: need at least two samples");

  // W(t_i) = -Ad(x_i) V_i, then the normal equations of the affine fit,
  // solved per coordinate with a shared 2x2 system.
  std::vector<Vec3> w(n);
  double St = 0.0, Stt = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = -adjoint(x.points[i], V.states[i].V);
    St += V.times[i];
    Stt += V.times[i] * V.times[i];
  }
  const double N = static_cast<double>(n);
  const double det = N * Stt - St * St;
  Vec3 Sw = Vec3::Zero(), Stw = Vec3::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    Sw += w[i];
    Stw += V.times[i] * w[i];
  }

  LinearFit fit;
  fit.W1 = (N * Stw - St * Sw) / det;
  fit.W0 = (Sw - St * fit.W1) / N;
  for (std::size_t i = 0; i < n; ++i) {
    fit.max_residual =
        std::max(fit.max_residual, (w[i] - fit.W0 - V.times[i] * fit.W1).norm());
  }
  return fit;
}

}  // namespace liequad
