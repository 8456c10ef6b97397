// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mhdrt/forms.hpp"

namespace mhdrt {

// Time history of one Fourier mode under
//   J a'' + E1 a' + |xi|^2 E0 a = 0.
// energy[n]      = a'^T J a' + |xi|^2 a^T E0 a      (twice kinetic + potential)
// dissipation[n] = a'^T E1 a'                        (instantaneous rate / 2)
// norm[n]        = sqrt(a^T J a)
struct ModeTrajectory {
  std::vector<double> times;
  std::vector<Vector> displacement;
  std::vector<Vector> velocity;
  std::vector<double> energy;
  std::vector<double> dissipation;
  std::vector<double> norm;
  double dt = 0.0;
};

// Integrates the mode with the average-acceleration Newmark scheme
// (trapezoidal; implicit, A-stable, second order).  The effective matrix is
// factored once per trajectory.
ModeTrajectory evolve_mode(const FluidParams& params, const MagneticConfig& mag,
                           const Frequency& xi, const HermiteSpace& space, const Vector& a0,
                           const Vector& v0, double dt, double t_end);

// Max over steps of |dE/dt + 2 D_mid| / (|E| + |D| dt + floor) with D_mid
// the endpoint average of the dissipation.  The scheme satisfies the
// discrete balance up to an O(dt^2) defect, so the value shrinks by ~4x
// when dt is halved.
double energy_balance_residual(const ModeTrajectory& traj);

// Log-linear least-squares growth exponent of norm(t) over the last 60% of
// the trajectory.
double fit_growth_exponent(const ModeTrajectory& traj);

}  // namespace mhdrt
