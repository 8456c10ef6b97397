// SPDX-License-Identifier: Apache-2.0

#include "mhdrt/forms.hpp"

#include <array>

namespace mhdrt {

namespace {

// 4-point Gauss rule on [0,1]: exact through degree 7, enough for every
// product of cubic shape functions appearing below.
constexpr int kGaussN = 4;
constexpr double kGaussT[kGaussN] = {
    0.5 - 0.8611363115940526 / 2.0,
    0.5 - 0.3399810435848563 / 2.0,
    0.5 + 0.3399810435848563 / 2.0,
    0.5 + 0.8611363115940526 / 2.0,
};
constexpr double kGaussW[kGaussN] = {
    0.3478548451374538 / 2.0,
    0.6521451548625461 / 2.0,
    0.6521451548625461 / 2.0,
    0.3478548451374538 / 2.0,
};

// Per-element Hermite matrices: mass M = \int N_i N_j, gradient K1 =
// \int N_i' N_j', curvature K2 = \int N_i'' N_j'', and the mixed block
// C_ij = \int N_i'' N_j used by the (|xi|^2 psi + psi'')^2 square.
struct ElementMats {
  double M[4][4] = {};
  double K1[4][4] = {};
  double K2[4][4] = {};
  double C[4][4] = {};
};

ElementMats hermite_element(double h) {
  ElementMats em;
  for (int q = 0; q < kGaussN; ++q) {
    double n0[4], n1[4], n2[4];
    detail::hermite_shape(kGaussT[q], h, 0, n0);
    detail::hermite_shape(kGaussT[q], h, 1, n1);
    detail::hermite_shape(kGaussT[q], h, 2, n2);
    const double w = kGaussW[q] * h;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        em.M[i][j] += w * n0[i] * n0[j];
        em.K1[i][j] += w * n1[i] * n1[j];
        em.K2[i][j] += w * n2[i] * n2[j];
        em.C[i][j] += w * n2[i] * n0[j];
      }
  }
  return em;
}

// Scatters c_M*M + c_K1*K1 + c_K2*K2 + c_C*(C + C^T) for each element into
// the global matrix, with the per-element coefficients supplied by `coeff`.
template <typename CoeffFn>
Matrix assemble_hermite(const HermiteSpace& space, CoeffFn&& coeff) {
  const InterfaceMesh& mesh = space.mesh();
  Matrix A = Matrix::Zero(space.dof_count(), space.dof_count());
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const ElementMats em = hermite_element(mesh.element_size(e));
    const std::array<double, 4> c = coeff(mesh.element_is_upper(e));
    const int dofs[4] = {space.value_dof(e), space.deriv_dof(e),
                         space.value_dof(e + 1), space.deriv_dof(e + 1)};
    for (int i = 0; i < 4; ++i) {
      if (dofs[i] < 0) continue;
      for (int j = 0; j < 4; ++j) {
        if (dofs[j] < 0) continue;
        A(dofs[i], dofs[j]) += c[0] * em.M[i][j] + c[1] * em.K1[i][j] +
                               c[2] * em.K2[i][j] + c[3] * (em.C[i][j] + em.C[j][i]);
      }
    }
  }
  return A;
}

void require_frequency(const Frequency& xi) {
  if (!(xi.magnitude_sq() > 0.0))
    throw DegenerateFrequencyError("wave vector must be nonzero");
}

}  // namespace

Matrix assemble_J(const HermiteSpace& space, const FluidParams& params, const Frequency& xi) {
  require_frequency(xi);
  const double k2 = xi.magnitude_sq();
  return assemble_hermite(space, [&](bool upper) {
    const double r = 0.5 * params.rho(upper);
    return std::array<double, 4>{r * k2, r, 0.0, 0.0};
  });
}

Matrix assemble_E0_vertical(const HermiteSpace& space, const FluidParams& params,
                            const MagneticConfig& mag, const Frequency& xi) {
  if (mag.orientation != Orientation::Vertical)
    throw OrientationMismatchError("vertical form requested for a horizontal field");
  require_frequency(xi);
  const double k2 = xi.magnitude_sq();
  const double b2 = mag.b_sq();
  Matrix A = assemble_hermite(space, [&](bool) {
    return std::array<double, 4>{0.0, 0.5 * b2, 0.5 * b2 / k2, 0.0};
  });
  const int i0 = space.interface_value_dof();
  A(i0, i0) -= 0.5 * params.g * params.density_jump();
  return A;
}

Matrix assemble_E0_horizontal(const HermiteSpace& space, const FluidParams& params,
                              const MagneticConfig& mag, const Frequency& xi) {
  if (mag.orientation != Orientation::Horizontal)
    throw OrientationMismatchError("horizontal form requested for a vertical field");
  require_frequency(xi);
  const double k2 = xi.magnitude_sq();
  // Only the along-field component of the wave vector is stabilized; for
  // xi = (0, xi2) the magnetic part vanishes identically.
  const double w = xi.xi1 * xi.xi1 / k2;
  const double b2 = mag.b_sq();
  Matrix A = assemble_hermite(space, [&](bool) {
    return std::array<double, 4>{0.5 * w * b2 * k2, 0.5 * w * b2, 0.0, 0.0};
  });
  const int i0 = space.interface_value_dof();
  A(i0, i0) -= 0.5 * params.g * params.density_jump();
  return A;
}

Matrix assemble_E1(const HermiteSpace& space, const FluidParams& params, const Frequency& xi) {
  require_frequency(xi);
  const double k2 = xi.magnitude_sq();
  return assemble_hermite(space, [&](bool upper) {
    const double m = 0.5 * params.mu(upper);
    // 4|xi|^2 psi'^2 + (|xi|^2 psi + psi'')^2 expanded into the blocks
    return std::array<double, 4>{m * k2 * k2, 4.0 * m * k2, m, m * k2};
  });
}

Matrix assemble_energy(const HermiteSpace& space, const FluidParams& params,
                       const MagneticConfig& mag, const Frequency& xi, double s) {
  require_frequency(xi);
  if (!(s >= 0.0)) throw PreconditionError("viscosity weight s must be nonnegative");
  const double k2 = xi.magnitude_sq();
  const double b2 = mag.b_sq();
  const bool vertical = mag.orientation == Orientation::Vertical;
  const double w = vertical ? 0.0 : xi.xi1 * xi.xi1 / k2;
  Matrix A = assemble_hermite(space, [&](bool upper) {
    const double m = 0.5 * s * params.mu(upper);
    std::array<double, 4> c{m * k2 * k2, 4.0 * m * k2, m, m * k2};
    if (vertical) {
      c[1] += 0.5 * b2 * k2;  // |B|^2 |xi|^2 psi'^2
      c[2] += 0.5 * b2;       // |B|^2 psi''^2
    } else {
      c[0] += 0.5 * w * b2 * k2 * k2;  // |B|^2 xi1^2 |xi|^2 psi^2
      c[1] += 0.5 * w * b2 * k2;       // |B|^2 xi1^2 psi'^2
    }
    return c;
  });
  const int i0 = space.interface_value_dof();
  A(i0, i0) -= 0.5 * k2 * params.g * params.density_jump();
  return A;
}

FormSet assemble_forms(const HermiteSpace& space, const FluidParams& params,
                       const MagneticConfig& mag, const Frequency& xi) {
  Matrix e0 = (mag.orientation == Orientation::Vertical)
                  ? assemble_E0_vertical(space, params, mag, xi)
                  : assemble_E0_horizontal(space, params, mag, xi);
  return FormSet{assemble_J(space, params, xi), std::move(e0),
                 assemble_E1(space, params, xi), params, mag, xi};
}

Matrix assemble_mass(const HermiteSpace& space) {
  return assemble_hermite(space, [](bool) { return std::array<double, 4>{1, 0, 0, 0}; });
}

Matrix assemble_gradient(const HermiteSpace& space) {
  return assemble_hermite(space, [](bool) { return std::array<double, 4>{0, 1, 0, 0}; });
}

Matrix assemble_curvature(const HermiteSpace& space) {
  return assemble_hermite(space, [](bool) { return std::array<double, 4>{0, 0, 1, 0}; });
}

namespace {

template <typename CoeffFn>
void assemble_p1(const LinearSpace& space, Matrix& K, Matrix& M, CoeffFn&& coeff) {
  const InterfaceMesh& mesh = space.mesh();
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const double h = mesh.element_size(e);
    const auto [ck, cm] = coeff(mesh.element_is_upper(e));
    const double k = ck / h;
    const double m = cm * h / 6.0;
    const int d[2] = {space.dof(e), space.dof(e + 1)};
    const double ke[2][2] = {{k, -k}, {-k, k}};
    const double me[2][2] = {{2.0 * m, m}, {m, 2.0 * m}};
    for (int i = 0; i < 2; ++i) {
      if (d[i] < 0) continue;
      for (int j = 0; j < 2; ++j) {
        if (d[j] < 0) continue;
        K(d[i], d[j]) += ke[i][j];
        M(d[i], d[j]) += me[i][j];
      }
    }
  }
}

}  // namespace

H1Forms assemble_h1_forms(const LinearSpace& space) {
  H1Forms f;
  f.stiffness = Matrix::Zero(space.dof_count(), space.dof_count());
  f.mass = Matrix::Zero(space.dof_count(), space.dof_count());
  assemble_p1(space, f.stiffness, f.mass,
              [](bool) { return std::pair<double, double>{1.0, 1.0}; });
  f.interface_dof = space.interface_dof();
  f.interface = Vector::Zero(space.dof_count());
  f.interface[f.interface_dof] = 1.0;
  return f;
}

Matrix assemble_h1_weighted(const LinearSpace& space, const FluidParams& params,
                            const Frequency& xi) {
  require_frequency(xi);
  const double k2 = xi.magnitude_sq();
  Matrix K = Matrix::Zero(space.dof_count(), space.dof_count());
  Matrix M = Matrix::Zero(space.dof_count(), space.dof_count());
  assemble_p1(space, K, M, [&](bool upper) {
    const double r = params.rho(upper);
    return std::pair<double, double>{r, r * k2};
  });
  return K + M;
}

}  // namespace mhdrt
