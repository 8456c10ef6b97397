// SPDX-License-Identifier: Apache-2.0

#include "mhdrt/growth.hpp"

#include <cmath>
#include <limits>

#include "mhdrt/eigensolver.hpp"

namespace mhdrt {

namespace {

// Inviscid zero-field rate at the same frequency: a natural scale for the
// expansion search.  Only used once alpha(0) < 0, which requires [rho] > 0.
double characteristic_rate(const FluidParams& params, const Frequency& xi) {
  return std::sqrt(params.g * std::abs(params.density_jump()) * xi.magnitude() /
                   (params.rho_plus + params.rho_minus));
}

constexpr double kWindowExpansionCap = 1e6;
constexpr int kMaxIterations = 200;
constexpr double kPhiTarget = 1e-12;    // inner bisection target for |Phi - 1|
constexpr double kPhiAccept = 1e-10;    // acceptance threshold

// Right edge of the instability window for pre-assembled forms.  `evals`
// accumulates the number of eigensolves spent.
std::optional<double> window_edge(const FormSet& forms, int& evals) {
  auto alpha = [&](double s) {
    ++evals;
    return alpha_from_forms(forms, s).alpha;
  };
  if (alpha(0.0) >= 0.0) return std::nullopt;

  const double s_char = characteristic_rate(forms.params, forms.xi);
  double lo = 0.0;
  double hi = s_char;
  while (alpha(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > kWindowExpansionCap * s_char)
      throw UnboundedWindowError(
          "alpha stays negative far beyond the characteristic rate; "
          "the viscosity window is unbounded");
  }
  for (int it = 0; it < kMaxIterations && (hi - lo) > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (alpha(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::optional<double> find_s_star(const FluidParams& params, const MagneticConfig& mag,
                                  const Frequency& xi, const HermiteSpace& space) {
  const FormSet forms = assemble_forms(space, params, mag, xi);
  int evals = 0;
  return window_edge(forms, evals);
}

GrowthResult solve_growth_rate(const FluidParams& params, const MagneticConfig& mag,
                               const Frequency& xi, const HermiteSpace& space) {
  const FormSet forms = assemble_forms(space, params, mag, xi);
  GrowthResult result;
  result.xi = xi;

  int evals = 0;
  const std::optional<double> edge = window_edge(forms, evals);
  if (!edge) {
    result.status = Stability::Stable;
    result.iterations = evals;
    return result;
  }
  const double s_star = *edge;

  // Phi(s) = s / sqrt(-alpha(s)) increases from 0 to +inf across the
  // window, so bisection on Phi - 1 is safe.  Numerically nonnegative
  // alpha means we stepped past the window edge, i.e. Phi > 1.
  double lo = 0.0;
  double hi = s_star;
  double best_gap = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  ModifiedEigenResult best{0.0, Vector(), 0.0, xi, 0.0};
  for (int it = 0; it < kMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;  // interval exhausted in doubles
    ++evals;
    const ModifiedEigenResult r = alpha_from_forms(forms, mid);
    if (r.alpha >= 0.0) {
      hi = mid;
      continue;
    }
    const double phi = mid / std::sqrt(-r.alpha);
    const double gap = std::abs(phi - 1.0);
    if (gap < best_gap) {
      best_gap = gap;
      best_s = mid;
      best = r;
    }
    if (gap <= kPhiTarget) break;
    (phi < 1.0 ? lo : hi) = mid;
  }
  if (!(best_gap <= kPhiAccept))
    throw ConvergenceFailureError("fixed-point bisection did not reach |Phi - 1| tolerance");

  result.status = Stability::Unstable;
  result.lambda = best_s;
  result.s_star = s_star;
  // The eigensolver's sign is arbitrary; report the mode with the interface
  // rising.
  if (space.eval(best.psi, 0.0) < 0.0) best.psi = -best.psi;
  result.psi = best.psi;
  result.psi0 = space.eval(best.psi, 0.0);
  result.phi_gap = best_gap;
  result.iterations = evals;

  // Relative residual of the quadratic pencil in the J^{-1} dual norm; the
  // scale is the triangle-inequality bound on the three constituent terms.
  Eigen::LLT<Matrix> llt(forms.J);
  if (llt.info() != Eigen::Success) throw MassMatrixError("J is not positive definite");
  const Matrix L = llt.matrixL();
  auto dual_norm = [&](const Vector& v) {
    return L.triangularView<Eigen::Lower>().solve(v).norm();
  };
  const double lam = result.lambda;
  const Vector rj = forms.J * best.psi;
  const Vector r1 = forms.E1 * best.psi;
  const Vector r0 = forms.E0 * best.psi;
  const double k2 = xi.magnitude_sq();
  const double scale = lam * lam * dual_norm(rj) + lam * dual_norm(r1) + k2 * dual_norm(r0);
  // lambda^2 J + lambda E1 + k^2 E0 applied to psi cancels almost fully at
  // the fixed point; the combination is accumulated in extended precision so
  // the cancellation is not polluted by separately rounded matrix-vector
  // products.
  const Vector resid = detail::shifted_residual(forms, lam, -(lam * lam), best.psi);
  result.pencil_residual = dual_norm(resid) / (scale > 0.0 ? scale : 1.0);
  return result;
}

DispersionCurve dispersion_sweep(const FluidParams& params, const MagneticConfig& mag,
                                 const std::vector<Frequency>& grid,
                                 const HermiteSpace& space) {
  DispersionCurve curve;
  curve.samples.reserve(grid.size());
  for (const Frequency& xi : grid) {
    try {
      curve.samples.push_back(solve_growth_rate(params, mag, xi, space));
    } catch (const Error& e) {
      GrowthResult failed;
      failed.xi = xi;
      failed.failure = e.what();
      curve.samples.push_back(std::move(failed));
    }
  }
  for (const GrowthResult& r : curve.samples)
    if (!r.failure && r.status == Stability::Unstable)
      curve.lambda_max = std::max(curve.lambda_max, r.lambda);
  return curve;
}

double growth_bound(const FluidParams& params, const MagneticConfig& mag) {
  if (mag.orientation != Orientation::Vertical)
    throw OrientationMismatchError("the a-priori growth bound applies to vertical fields");
  if (!params.rayleigh_taylor())
    throw StableConfigurationError("density jump is nonpositive");
  if (!(mag.magnitude > 0.0))
    throw PreconditionError("the growth bound needs a positive field magnitude");
  return 2.0 * std::sqrt(params.g * params.density_jump()) /
         (mag.magnitude * std::pow(params.rho_plus, 0.25));
}

double euler_lambda(const FluidParams& params, const Frequency& xi) {
  if (!params.rayleigh_taylor())
    throw StableConfigurationError("density jump is nonpositive");
  const double k = xi.magnitude();
  if (!(k > 0.0)) throw DegenerateFrequencyError("wave vector must be nonzero");
  return std::sqrt(params.g * params.density_jump() * k * std::tanh(k) /
                   (params.rho_plus + params.rho_minus));
}

double euler_lambda_discrete(const FluidParams& params, const Frequency& xi,
                             const LinearSpace& space) {
  if (!params.rayleigh_taylor())
    throw StableConfigurationError("density jump is nonpositive");
  const Matrix A = assemble_h1_weighted(space, params, xi);
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success)
    throw MassMatrixError("inviscid quotient matrix is not positive definite");
  Vector e0 = Vector::Zero(space.dof_count());
  e0[space.interface_dof()] = 1.0;
  const double green0 = e0.dot(llt.solve(e0));
  return std::sqrt(params.g * params.density_jump() * xi.magnitude_sq() * green0);
}

namespace {

// 4-point Gauss rule on [0,1], shared with the assembly in spirit but local
// here to keep the pressure quadrature self-contained.
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

}  // namespace

ModeComponents reconstruct_mode(const GrowthResult& result, const FluidParams& params,
                                const MagneticConfig& mag, const HermiteSpace& space) {
  if (result.status != Stability::Unstable || result.failure)
    throw NoModeError("no normal mode exists for a stable or failed sample");

  const InterfaceMesh& mesh = space.mesh();
  const double lam = result.lambda;
  const double k2 = result.xi.magnitude_sq();
  const double b2 = mag.b_sq();
  const bool vertical = mag.orientation == Orientation::Vertical;
  const Vector& u = result.psi;

  // dp/dx from the third momentum equation, per side
  auto p_prime = [&](double x, bool upper) {
    const double psi = space.eval(u, x);
    const double psi2 = space.eval(u, x, 2);
    const double mu = params.mu(upper);
    const double rho = params.rho(upper);
    double v = -lam * rho * psi - mu * (k2 * psi - psi2);
    if (vertical)
      v += b2 / lam * psi2;
    else
      v -= b2 * result.xi.xi1 * result.xi.xi1 / lam * psi;
    return v;
  };

  // Lower-wall anchor from the in-plane momentum balance at x = -1, where
  // psi' = 0 and only the psi''' terms survive.
  const double ppp_wall = space.eval(u, -1.0, 3, Side::Plus);
  double p = vertical ? (params.mu_minus + b2 / lam) * ppp_wall / k2
                      : params.mu_minus * ppp_wall / k2;

  ModeComponents mode;
  auto push = [&](double x, double pressure) {
    const double dpsi = space.eval(u, x, 1);
    mode.x.push_back(x);
    mode.psi.push_back(space.eval(u, x));
    mode.psi_prime.push_back(dpsi);
    mode.phi.push_back(-result.xi.xi1 * dpsi / k2);
    mode.theta.push_back(-result.xi.xi2 * dpsi / k2);
    mode.pressure.push_back(pressure);
  };

  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const bool upper = mesh.element_is_upper(e);
    const double xl = mesh.nodes[e];
    const double h = mesh.element_size(e);
    if (e == mesh.interface_index) {
      // pressure jump [[p]] = (g[rho] psi(0) + 2 lambda [mu] psi'(0)) / lambda
      push(0.0, p);
      p += (params.g * params.density_jump() * space.eval(u, 0.0) +
            2.0 * lam * (params.mu_plus - params.mu_minus) * space.eval(u, 0.0, 1)) /
           lam;
    }
    push(xl, p);
    for (int q = 0; q < kGaussN; ++q) {
      const double x = xl + kGaussT[q] * h;
      // exact quadrature of the cubic p' over [xl, x]
      double seg = 0.0;
      for (int r = 0; r < kGaussN; ++r)
        seg += kGaussW[r] * p_prime(xl + kGaussT[r] * (x - xl), upper) * (x - xl);
      push(x, p + seg);
    }
    double full = 0.0;
    for (int r = 0; r < kGaussN; ++r)
      full += kGaussW[r] * p_prime(xl + kGaussT[r] * h, upper) * h;
    p += full;
  }
  push(1.0, p);
  return mode;
}

}  // namespace mhdrt
