// SPDX-License-Identifier: Apache-2.0

#include "mhdrt/modified_problem.hpp"

#include <algorithm>
#include <cmath>

#include "mhdrt/eigensolver.hpp"

namespace mhdrt {

ModifiedEigenResult alpha_from_forms(const FormSet& forms, double s) {
  if (!(s >= 0.0)) throw PreconditionError("viscosity weight s must be nonnegative");
  const double k2 = forms.xi.magnitude_sq();
  const Matrix K = k2 * forms.E0 + s * forms.E1;
  SymmetricPencil pencil(K, forms.J);
  double alpha = pencil.smallest();
  Vector psi = pencil.eigenvector(0);
  // The fixed-point gap tolerance sits below the dense solver's noise
  // floor, so the ground pair is polished against the assembled matrices.
  refine_eigenpair(K, forms.J, alpha, psi);

  // Forming K rounds its stiffest entries to absolute errors far above the
  // gap tolerance, which makes the eigenvalue of K a jittery function of s.
  // The quotient evaluated from the unscaled forms is smooth in s down to
  // the extended-precision floor, and the quotient's stationarity makes the
  // direction error of psi second order.
  auto split_quotient = [&](const Vector& v) {
    const long double q0 = detail::quad_form(forms.E0, v);
    const long double q1 = detail::quad_form(forms.E1, v);
    const long double qj = detail::quad_form(forms.J, v);
    return static_cast<double>(
        (static_cast<long double>(k2) * q0 + static_cast<long double>(s) * q1) / qj);
  };
  alpha = split_quotient(psi);

  // Wilkinson refinement against the unscaled trio: the shifted solve only
  // preconditions, the extended-precision residual carries the information,
  // and a step is kept only when that residual shrinks.  This pulls the
  // pair onto an eigenpair of the exact forms rather than of the rounded K.
  Vector r = detail::shifted_residual(forms, s, alpha, psi);
  for (int pass = 0; pass < 2; ++pass) {
    const Matrix shifted = K - alpha * forms.J;
    const Vector delta = Eigen::PartialPivLU<Matrix>(shifted).solve(r);
    if (!delta.allFinite()) break;
    Vector cand = psi - delta;
    const long double jn = detail::quad_form(forms.J, cand);
    if (!(jn > 0.0L)) break;
    cand /= std::sqrt(static_cast<double>(jn));
    const double cand_alpha = split_quotient(cand);
    if (!std::isfinite(cand_alpha)) break;
    const Vector cand_r = detail::shifted_residual(forms, s, cand_alpha, cand);
    if (!(cand_r.norm() < r.norm())) break;
    psi = cand;
    alpha = cand_alpha;
    r = cand_r;
  }
  return ModifiedEigenResult{alpha, psi, s, forms.xi, pencil.residual(0)};
}

ModifiedEigenResult alpha_of_s(double s, const FluidParams& params, const MagneticConfig& mag,
                               const Frequency& xi, const HermiteSpace& space) {
  return alpha_from_forms(assemble_forms(space, params, mag, xi), s);
}

JumpResiduals jump_residuals(const ModifiedEigenResult& result, const FluidParams& params,
                             const MagneticConfig& mag, const HermiteSpace& space) {
  const double k2 = result.xi.magnitude_sq();
  const double s = result.s;
  const double lambda_sq = -result.alpha;
  // Magnetic tension enters the vertical interface conditions only.
  const double b2 = (mag.orientation == Orientation::Vertical) ? mag.b_sq() : 0.0;

  const double psi0 = space.eval(result.psi, 0.0);
  const double dpsi0 = space.eval(result.psi, 0.0, 1);
  const double ppm = space.eval(result.psi, 0.0, 2, Side::Minus);
  const double ppp = space.eval(result.psi, 0.0, 2, Side::Plus);
  const double pppm = space.eval(result.psi, 0.0, 3, Side::Minus);
  const double pppp = space.eval(result.psi, 0.0, 3, Side::Plus);

  auto rel = [](double jump, std::initializer_list<double> terms) {
    double scale = 0.0;
    for (double t : terms) scale = std::max(scale, std::abs(t));
    return scale > 0.0 ? std::abs(jump) / scale : 0.0;
  };

  // [[ s mu (|xi|^2 psi + psi'') + |B|^2 psi'' ]] = 0
  const double a_plus = s * params.mu_plus * (k2 * psi0 + ppp) + b2 * ppp;
  const double a_minus = s * params.mu_minus * (k2 * psi0 + ppm) + b2 * ppm;
  const double r1 = rel(a_plus - a_minus, {a_plus, a_minus});

  // [[ s mu (psi''' - 3|xi|^2 psi') + |B|^2 psi''' ]]
  //   = [[ lambda^2 rho psi' ]] + g[rho] |xi|^2 psi(0)
  const double t_plus = s * params.mu_plus * (pppp - 3.0 * k2 * dpsi0) + b2 * pppp;
  const double t_minus = s * params.mu_minus * (pppm - 3.0 * k2 * dpsi0) + b2 * pppm;
  const double t_rho = lambda_sq * params.density_jump() * dpsi0;
  const double t_g = params.g * params.density_jump() * k2 * psi0;
  const double r2 = rel(t_plus - t_minus - t_rho - t_g, {t_plus, t_minus, t_rho, t_g});

  return JumpResiduals{r1, r2};
}

namespace detail {

Vector shifted_residual(const FormSet& forms, double s, double sigma, const Vector& psi) {
  const long double k2 = forms.xi.magnitude_sq();
  const long double sw = s;
  const long double sh = sigma;
  const Eigen::Index n = psi.size();
  Vector r(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    long double acc = 0.0L;
    for (Eigen::Index j = 0; j < n; ++j)
      acc += (k2 * static_cast<long double>(forms.E0(i, j)) +
              sw * static_cast<long double>(forms.E1(i, j)) -
              sh * static_cast<long double>(forms.J(i, j))) *
             static_cast<long double>(psi[j]);
    r[i] = static_cast<double>(acc);
  }
  return r;
}

}  // namespace detail

}  // namespace mhdrt
