// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "mhdrt/forms.hpp"

namespace mhdrt {

// Critical field strength and critical wave numbers for a given
// configuration.  Markers: xi_vc = +inf and xi_hc = 0 when |B| >= |B|_c
// (no unstable frequencies survive); xi_vc = 0 and xi_hc = +inf when
// |B| = 0 (every frequency is unstable).
struct CriticalValues {
  double b_critical = 0.0;
  double xi_vc = 0.0;
  double xi_hc = 0.0;
  std::optional<double> xi_hc_oracle_value;  // closed-form cross-check
};

// |B|_c = sqrt(sup g[rho] psi(0)^2 / \int psi'^2), realized as the
// two-point minimization of \int psi'^2 subject to psi(0) = 1 on the P1
// space.  The continuum extremizer (the tent function) lies in every P1
// space with an interface node, so the discrete value is exact.
double critical_magnetic_number(const FluidParams& params, const LinearSpace& space);

// Vertical-field critical frequency: the infimum of
// |B|^2\int psi''^2 / (g[rho] psi(0)^2 - |B|^2\int psi'^2) over fields with
// positive denominator, computed as the reciprocal of the largest
// eigenvalue of the (indefinite) denominator form against the numerator
// form on the clamped Hermite space.
double critical_freq_vertical(const FluidParams& params, const MagneticConfig& mag,
                              const HermiteSpace& space);

// Horizontal-field critical frequency: the supremum of
// (g[rho] psi(0)^2 - |B|^2\int psi'^2) / (|B|^2\int psi^2) on the P1 space.
double critical_freq_horizontal(const FluidParams& params, const MagneticConfig& mag,
                                const LinearSpace& space);

// Same extremal problem restricted to the clamped Hermite space.  The sign
// trichotomy of the assembled energy is exact against this value (same
// trial space), which is what the classification tests need.
double critical_freq_horizontal_h2(const FluidParams& params, const MagneticConfig& mag,
                                   const HermiteSpace& space);

// Closed-form root of 2|B|^2 xi coth(xi) = g[rho], the Euler-Lagrange
// characterization of the horizontal critical frequency.  Used as an
// independent cross-check of the finite-element value.
double xi_hc_oracle(const FluidParams& params, const MagneticConfig& mag);

CriticalValues compute_critical_values(const FluidParams& params, const MagneticConfig& mag,
                                       const LinearSpace& p1, const HermiteSpace& hermite);

}  // namespace mhdrt
