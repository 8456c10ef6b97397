// SPDX-License-Identifier: Apache-2.0

#include "mhdrt/variational.hpp"

#include <cmath>
#include <limits>

#include "mhdrt/eigensolver.hpp"

namespace mhdrt {

namespace {

void require_rayleigh_taylor(const FluidParams& params) {
  if (!params.rayleigh_taylor())
    throw StableConfigurationError(
        "density jump is nonpositive; the configuration is spectrally stable");
}

void require_positive_field(const MagneticConfig& mag) {
  if (!(mag.magnitude > 0.0))
    throw PreconditionError("critical frequency needs a positive field magnitude");
}

// Largest eigenvalue tau of (g[rho] R - |B|^2 A1) x = tau A2 x with A2
// positive definite.  tau > 0 iff some trial field makes the numerator of
// the corresponding critical-frequency quotient positive.
double threshold_tau(const FluidParams& params, const MagneticConfig& mag, const Matrix& a1,
                     const Matrix& a2, int interface_dof) {
  Matrix num = -mag.b_sq() * a1;
  num(interface_dof, interface_dof) += params.g * params.density_jump();
  return SymmetricPencil(num, a2).largest();
}

}  // namespace

double critical_magnetic_number(const FluidParams& params, const LinearSpace& space) {
  require_rayleigh_taylor(params);
  const H1Forms f = assemble_h1_forms(space);
  const int i0 = f.interface_dof;
  const int n = space.dof_count();

  // min x^T K x subject to x_{i0} = 1: eliminate the pinned dof and solve
  // the reduced SPD system.
  Matrix krr(n - 1, n - 1);
  Vector kr0(n - 1);
  for (int i = 0, ii = 0; i < n; ++i) {
    if (i == i0) continue;
    kr0[ii] = f.stiffness(i, i0);
    for (int j = 0, jj = 0; j < n; ++j) {
      if (j == i0) continue;
      krr(ii, jj) = f.stiffness(i, j);
      ++jj;
    }
    ++ii;
  }
  Eigen::LLT<Matrix> llt(krr);
  if (llt.info() != Eigen::Success)
    throw MassMatrixError("P1 stiffness matrix is not positive definite");
  const Vector xr = llt.solve(-kr0);
  const double min_grad_sq = f.stiffness(i0, i0) + 2.0 * kr0.dot(xr) + xr.dot(krr * xr);
  return std::sqrt(params.g * params.density_jump() / min_grad_sq);
}

double critical_freq_vertical(const FluidParams& params, const MagneticConfig& mag,
                              const HermiteSpace& space) {
  if (mag.orientation != Orientation::Vertical)
    throw OrientationMismatchError("vertical critical frequency needs a vertical field");
  require_rayleigh_taylor(params);
  require_positive_field(mag);
  const Matrix k1 = assemble_gradient(space);
  const Matrix k2 = assemble_curvature(space);
  const double tau =
      threshold_tau(params, mag, k1, mag.b_sq() * k2, space.interface_value_dof());
  if (!(tau > 0.0))
    throw SupercriticalFieldError("field is at or above the critical magnetic number");
  return 1.0 / std::sqrt(tau);
}

double critical_freq_horizontal(const FluidParams& params, const MagneticConfig& mag,
                                const LinearSpace& space) {
  if (mag.orientation != Orientation::Horizontal)
    throw OrientationMismatchError("horizontal critical frequency needs a horizontal field");
  require_rayleigh_taylor(params);
  require_positive_field(mag);
  const H1Forms f = assemble_h1_forms(space);
  const double tau =
      threshold_tau(params, mag, f.stiffness, mag.b_sq() * f.mass, f.interface_dof);
  if (!(tau > 0.0))
    throw SupercriticalFieldError("field is at or above the critical magnetic number");
  return std::sqrt(tau);
}

double critical_freq_horizontal_h2(const FluidParams& params, const MagneticConfig& mag,
                                   const HermiteSpace& space) {
  if (mag.orientation != Orientation::Horizontal)
    throw OrientationMismatchError("horizontal critical frequency needs a horizontal field");
  require_rayleigh_taylor(params);
  require_positive_field(mag);
  const Matrix k1 = assemble_gradient(space);
  const Matrix m = assemble_mass(space);
  const double tau =
      threshold_tau(params, mag, k1, mag.b_sq() * m, space.interface_value_dof());
  if (!(tau > 0.0))
    throw SupercriticalFieldError("field is at or above the critical magnetic number");
  return std::sqrt(tau);
}

double xi_hc_oracle(const FluidParams& params, const MagneticConfig& mag) {
  require_rayleigh_taylor(params);
  require_positive_field(mag);
  const double target = params.g * params.density_jump();
  const double b2 = mag.b_sq();
  // f(xi) = 2|B|^2 xi coth(xi) is increasing with f(0+) = 2|B|^2, so a root
  // exists iff the field is subcritical.
  auto f = [&](double xi) { return 2.0 * b2 * xi / std::tanh(xi) - target; };
  if (!(2.0 * b2 < target))
    throw SupercriticalFieldError("field is at or above the critical magnetic number");
  double lo = 1e-12;
  double hi = 1.1 * target / (2.0 * b2) + 1.0;  // xi coth(xi) >= xi bounds the root
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

CriticalValues compute_critical_values(const FluidParams& params, const MagneticConfig& mag,
                                       const LinearSpace& p1, const HermiteSpace& hermite) {
  CriticalValues cv;
  cv.b_critical = critical_magnetic_number(params, p1);
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (mag.magnitude == 0.0) {
    cv.xi_vc = 0.0;  // every frequency unstable
    cv.xi_hc = inf;
    return cv;
  }
  if (mag.magnitude >= cv.b_critical) {
    cv.xi_vc = inf;  // no unstable frequencies
    cv.xi_hc = 0.0;
    return cv;
  }
  if (mag.orientation == Orientation::Vertical) {
    cv.xi_vc = critical_freq_vertical(params, mag, hermite);
    const MagneticConfig horiz(Orientation::Horizontal, mag.magnitude);
    cv.xi_hc = critical_freq_horizontal(params, horiz, p1);
    cv.xi_hc_oracle_value = xi_hc_oracle(params, horiz);
  } else {
    const MagneticConfig vert(Orientation::Vertical, mag.magnitude);
    cv.xi_vc = critical_freq_vertical(params, vert, hermite);
    cv.xi_hc = critical_freq_horizontal(params, mag, p1);
    cv.xi_hc_oracle_value = xi_hc_oracle(params, mag);
  }
  return cv;
}

}  // namespace mhdrt
