// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mhdrt/spaces.hpp"

namespace mhdrt {

// Assembled quadratic forms of the modified variational problem.  The
// convention throughout: u^T A u equals the physical functional including
// its 1/2 prefactor, so
//
//   J(psi)  = 1/2 \int rho (|xi|^2 psi^2 + psi'^2)
//   E0(psi) = magnetic part / |xi|^2  -  1/2 g[rho] psi(0)^2
//   E1(psi) = 1/2 \int mu (4|xi|^2 psi'^2 + (|xi|^2 psi + psi'')^2)
//
// and the total energy at viscosity weight s is |xi|^2 E0 + s E1.  The
// interface contribution is a rank-one update at the interface value dof,
// never smeared through quadrature.
struct FormSet {
  Matrix J;
  Matrix E0;
  Matrix E1;
  FluidParams params;
  MagneticConfig mag;
  Frequency xi;
};

Matrix assemble_J(const HermiteSpace& space, const FluidParams& params, const Frequency& xi);

// Vertical-field normalized potential energy:
//   E0 = 1/2 \int |B|^2 (psi'^2 + psi''^2/|xi|^2) - 1/2 g[rho] psi(0)^2
Matrix assemble_E0_vertical(const HermiteSpace& space, const FluidParams& params,
                            const MagneticConfig& mag, const Frequency& xi);

// Horizontal-field analog; only the field-aligned component xi1 of the wave
// vector feels the magnetic tension:
//   E0 = (xi1^2/|xi|^2) 1/2 \int |B|^2 (|xi|^2 psi^2 + psi'^2) - 1/2 g[rho] psi(0)^2
Matrix assemble_E0_horizontal(const HermiteSpace& space, const FluidParams& params,
                              const MagneticConfig& mag, const Frequency& xi);

Matrix assemble_E1(const HermiteSpace& space, const FluidParams& params, const Frequency& xi);

// Total energy assembled directly from the unsplit integrand at viscosity
// weight s; equals |xi|^2 E0 + s E1 up to roundoff.  Exercised by the
// decomposition tests.
Matrix assemble_energy(const HermiteSpace& space, const FluidParams& params,
                       const MagneticConfig& mag, const Frequency& xi, double s);

FormSet assemble_forms(const HermiteSpace& space, const FluidParams& params,
                       const MagneticConfig& mag, const Frequency& xi);

// Plain (unweighted) Hermite building blocks: \int psi phi, \int psi' phi',
// \int psi'' phi''.
Matrix assemble_mass(const HermiteSpace& space);
Matrix assemble_gradient(const HermiteSpace& space);
Matrix assemble_curvature(const HermiteSpace& space);

// P1 forms for the H^1 extremal problems.  interface is the coefficient
// vector of the point functional psi -> psi(0), so the interface form is
// the rank-one matrix interface * interface^T.
struct H1Forms {
  Matrix stiffness;  // \int psi' phi'
  Matrix mass;       // \int psi phi
  Vector interface;  // unit vector at the interface dof
  int interface_dof = -1;
};

H1Forms assemble_h1_forms(const LinearSpace& space);

// rho-weighted P1 matrix \int rho (|xi|^2 psi phi + psi' phi') of the
// inviscid quotient.
Matrix assemble_h1_weighted(const LinearSpace& space, const FluidParams& params,
                            const Frequency& xi);

}  // namespace mhdrt
