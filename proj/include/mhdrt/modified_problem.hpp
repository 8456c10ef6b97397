// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mhdrt/forms.hpp"

namespace mhdrt {

// Solution of the modified eigenvalue problem at viscosity weight s:
// alpha(s) is the smallest eigenvalue of |xi|^2 E0 + s E1 against J, psi
// the J-normalized minimizer, residual the relative eigenpair residual in
// the J^{-1} dual norm.
struct ModifiedEigenResult {
  double alpha;
  Vector psi;
  double s;
  Frequency xi;
  double residual;
};

ModifiedEigenResult alpha_of_s(double s, const FluidParams& params, const MagneticConfig& mag,
                               const Frequency& xi, const HermiteSpace& space);

// Same solve reusing already-assembled forms; this is what the fixed-point
// iteration calls in its inner loop.
ModifiedEigenResult alpha_from_forms(const FormSet& forms, double s);

// Natural interface conditions of the modified problem, evaluated on a
// discrete eigenfunction from one-sided traces at x = 0.  r1 is the
// second-order (curvature) jump, r2 the third-order jump; both are
// normalized by the magnitude of their largest constituent term and decay
// under mesh refinement for a converged eigenfunction.
struct JumpResiduals {
  double r1;
  double r2;
};

JumpResiduals jump_residuals(const ModifiedEigenResult& result, const FluidParams& params,
                             const MagneticConfig& mag, const HermiteSpace& space);

namespace detail {

// Residual (|xi|^2 E0 + s E1 - sigma J) psi with the matrix combination
// accumulated entrywise in long double.  Forming the combined operator in
// doubles rounds its stiffest entries to absolute errors far above the
// fixed-point tolerances, so eigenpair refinement and the reported pencil
// residuals both evaluate through this kernel instead.
Vector shifted_residual(const FormSet& forms, double s, double sigma, const Vector& psi);

}  // namespace detail

}  // namespace mhdrt
