// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mhdrt/modified_problem.hpp"

namespace mhdrt {

enum class Stability { Stable, Unstable };

// Outcome of the fixed-point solve at one wave vector.  For Stable samples
// only xi, status and iterations are meaningful.  For Unstable samples
// lambda = s solves s / sqrt(-alpha(s)) = 1, psi is the J-normalized
// minimizer at the fixed point, phi_gap = |Phi(s) - 1| at acceptance and
// pencil_residual the relative residual of the quadratic pencil
// (lambda^2 J + lambda E1 + |xi|^2 E0) psi.
struct GrowthResult {
  Frequency xi{0.0, 0.0};
  Stability status = Stability::Stable;
  double lambda = 0.0;
  double s_star = 0.0;
  Vector psi;
  double psi0 = 0.0;
  double phi_gap = 0.0;
  double pencil_residual = 0.0;
  int iterations = 0;
  std::optional<std::string> failure;  // set by sweeps when a sample throws
};

// Right endpoint s* of the window where alpha < 0, found by bracketed
// bisection after geometric expansion; nullopt when alpha(0) >= 0 (no
// window, the sample is stable).  Expansion is capped at 1e6 times the
// characteristic inviscid rate; hitting the cap (e.g. both viscosities
// zero) raises UnboundedWindowError.
std::optional<double> find_s_star(const FluidParams& params, const MagneticConfig& mag,
                                  const Frequency& xi, const HermiteSpace& space);

GrowthResult solve_growth_rate(const FluidParams& params, const MagneticConfig& mag,
                               const Frequency& xi, const HermiteSpace& space);

struct DispersionCurve {
  std::vector<GrowthResult> samples;
  double lambda_max = 0.0;  // largest growth rate over the grid
};

// Runs solve_growth_rate over the grid; per-sample domain errors are
// recorded in the sample's `failure` field and the sweep continues.
DispersionCurve dispersion_sweep(const FluidParams& params, const MagneticConfig& mag,
                                 const std::vector<Frequency>& grid,
                                 const HermiteSpace& space);

// Frequency-independent a-priori bound 2 sqrt(g[rho]) / (|B| rho_+^{1/4})
// on every vertical growth rate.
double growth_bound(const FluidParams& params, const MagneticConfig& mag);

// Inviscid zero-field dispersion relation
// lambda = sqrt(g[rho]|xi| tanh|xi| / (rho_+ + rho_-)).
double euler_lambda(const FluidParams& params, const Frequency& xi);

// P1 Rayleigh-quotient value of the same rate:
// lambda^2 = g[rho]|xi|^2 sup psi(0)^2 / \int rho(|xi|^2 psi^2 + psi'^2).
double euler_lambda_discrete(const FluidParams& params, const Frequency& xi,
                             const LinearSpace& space);

// Full normal-mode reconstruction from an unstable fixed point.  Fields are
// sampled at the mesh nodes and the interior quadrature points of every
// element, in increasing x; the interface appears twice (minus side first)
// because the pressure jumps there.  phi and theta are the in-plane
// velocity amplitudes -xi1 psi'/|xi|^2 and -xi2 psi'/|xi|^2; pressure is
// recovered by integrating the third momentum equation per side, anchored
// at the lower wall by the in-plane momentum balance and across the
// interface by the normal-stress jump.
struct ModeComponents {
  std::vector<double> x;
  std::vector<double> phi;
  std::vector<double> theta;
  std::vector<double> psi;
  std::vector<double> psi_prime;
  std::vector<double> pressure;
};

ModeComponents reconstruct_mode(const GrowthResult& result, const FluidParams& params,
                                const MagneticConfig& mag, const HermiteSpace& space);

}  // namespace mhdrt
