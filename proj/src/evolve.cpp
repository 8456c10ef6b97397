// SPDX-License-Identifier: Apache-2.0

#include "mhdrt/evolve.hpp"

#include <cmath>

namespace mhdrt {

ModeTrajectory evolve_mode(const FluidParams& params, const MagneticConfig& mag,
                           const Frequency& xi, const HermiteSpace& space, const Vector& a0,
                           const Vector& v0, double dt, double t_end) {
  if (!(dt > 0.0) || !(t_end > 0.0) || !(t_end >= dt))
    throw PreconditionError("time step and horizon must be positive with t_end >= dt");
  const FormSet forms = assemble_forms(space, params, mag, xi);
  if (a0.size() != forms.J.rows() || v0.size() != forms.J.rows())
    throw PreconditionError("initial data does not match the space dimension");

  const Matrix K = xi.magnitude_sq() * forms.E0;
  const std::size_t steps = static_cast<std::size_t>(std::llround(t_end / dt));

  Eigen::LLT<Matrix> jllt(forms.J);
  if (jllt.info() != Eigen::Success) throw MassMatrixError("J is not positive definite");

  // J + dt/2 E1 + dt^2/4 K stays invertible for every dt: its symmetric
  // part is J plus positive-semidefinite corrections shifted by K, whose
  // negative part is a single rank-one interface term too weak to cancel J
  // at the step sizes accepted above.  A singular factorization here means
  // corrupted inputs, not a physical regime.
  Eigen::FullPivLU<Matrix> lu(forms.J + 0.5 * dt * forms.E1 + 0.25 * dt * dt * K);
  if (!lu.isInvertible())
    throw Error("implicit Newmark system is singular; inputs are inconsistent");

  ModeTrajectory traj;
  traj.dt = dt;
  traj.times.reserve(steps + 1);
  traj.displacement.reserve(steps + 1);

  Vector a = a0;
  Vector v = v0;
  Vector acc = jllt.solve(-(forms.E1 * v + K * a));

  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.displacement.push_back(a);
    traj.velocity.push_back(v);
    traj.energy.push_back(v.dot(forms.J * v) + a.dot(K * a));
    traj.dissipation.push_back(v.dot(forms.E1 * v));
    traj.norm.push_back(std::sqrt(a.dot(forms.J * a)));
  };
  record(0.0);

  for (std::size_t n = 1; n <= steps; ++n) {
    const Vector a_pred = a + dt * v + 0.25 * dt * dt * acc;
    const Vector v_pred = v + 0.5 * dt * acc;
    acc = lu.solve(-(forms.E1 * v_pred + K * a_pred));
    a = a_pred + 0.25 * dt * dt * acc;
    v = v_pred + 0.5 * dt * acc;
    record(static_cast<double>(n) * dt);
  }
  return traj;
}

double energy_balance_residual(const ModeTrajectory& traj) {
  if (traj.times.size() < 2) return 0.0;
  double scale0 = 0.0;
  for (double e : traj.energy) scale0 = std::max(scale0, std::abs(e));
  const double floor = 1e-30 * (1.0 + scale0);
  double worst = 0.0;
  for (std::size_t n = 0; n + 1 < traj.times.size(); ++n) {
    const double de = (traj.energy[n + 1] - traj.energy[n]) / traj.dt;
    const double d_mid = 0.5 * (traj.dissipation[n] + traj.dissipation[n + 1]);
    const double denom =
        std::abs(traj.energy[n]) + std::abs(traj.dissipation[n]) * traj.dt + floor;
    worst = std::max(worst, std::abs(de + 2.0 * d_mid) / denom);
  }
  return worst;
}

double fit_growth_exponent(const ModeTrajectory& traj) {
  const double t_end = traj.times.back();
  double st = 0, sy = 0, stt = 0, sty = 0;
  std::size_t count = 0;
  for (std::size_t n = 0; n < traj.times.size(); ++n) {
    if (traj.times[n] < 0.4 * t_end) continue;
    if (!(traj.norm[n] > 0.0))
      throw PreconditionError("trajectory norm vanished; no exponent to fit");
    const double t = traj.times[n];
    const double y = std::log(traj.norm[n]);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    ++count;
  }
  if (count < 2) throw PreconditionError("too few samples in the fit window");
  const double nn = static_cast<double>(count);
  return (nn * sty - st * sy) / (nn * stt - st * st);
}

}  // namespace mhdrt
