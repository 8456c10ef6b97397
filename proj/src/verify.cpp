// SPDX-License-Identifier: Apache-2.0

#include "mhdrt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <random>
#include <sstream>
#include <vector>

#include "mhdrt/eigensolver.hpp"
#include "mhdrt/evolve.hpp"
#include "mhdrt/growth.hpp"
#include "mhdrt/variational.hpp"

namespace mhdrt {
namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

FluidParams base_params() { return FluidParams(2.0, 1.0, 0.3, 0.1, 1.0); }

// Closed-form critical field of the two-point problem, used to scale the
// field strengths of the test cases.
double base_bc(const FluidParams& p) { return std::sqrt(0.5 * p.g * p.density_jump()); }

double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

double char_rate(const FluidParams& p, const Frequency& xi) {
  return std::sqrt(p.g * std::abs(p.density_jump()) * xi.magnitude() /
                   (p.rho_plus + p.rho_minus));
}

using Verdict = std::pair<bool, std::string>;

// 1. The discrete critical field must reproduce sqrt(g[rho]/2) and
// approach it from below under refinement.
Verdict check_critical_field() {
  const FluidParams p = base_params();
  const double oracle = base_bc(p);
  const int meshes[] = {32, 64, 128, 256};
  std::vector<double> values;
  for (int n : meshes) {
    LinearSpace space(build_mesh(n));
    values.push_back(critical_magnetic_number(p, space));
  }
  bool ok = true;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    ok = ok && values[i] <= values[i + 1] + 1e-12 * oracle;
  for (double v : values) ok = ok && v <= oracle * (1.0 + 1e-12);
  const double rel = rel_err(values.back(), oracle);
  ok = ok && rel <= 1e-6;
  return {ok, "rel err " + sci(rel) + " at n=256, from below"};
}

// 2. The horizontal critical frequency against the transcendental root of
// 2|B|^2 xi coth(xi) = g[rho], including a case with a thin interface
// layer (|B| = 0.1 |B|_c puts the root near 100).
Verdict check_horizontal_critical() {
  const FluidParams p = base_params();
  const double bc = base_bc(p);
  LinearSpace space(build_mesh(320, 1.0));
  double worst = 0.0;
  for (double fac : {0.1, 0.3, 0.5}) {
    MagneticConfig mag(Orientation::Horizontal, fac * bc);
    const double fe = critical_freq_horizontal(p, mag, space);
    const double exact = xi_hc_oracle(p, mag);
    worst = std::max(worst, rel_err(fe, exact));
  }
  return {worst <= 1e-4, "max rel err " + sci(worst) + " for |B|/|B|_c in {0.1,0.3,0.5}"};
}

// 3. Inviscid zero-field rates from the P1 quotient against the closed
// form sqrt(g[rho]|xi| tanh|xi| / (rho_+ + rho_-)).
Verdict check_euler_baseline() {
  const FluidParams p = base_params();
  LinearSpace space(build_mesh(512, 0.3));
  double worst = 0.0;
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    const Frequency xi(x);
    worst = std::max(worst, rel_err(euler_lambda_discrete(p, xi, space), euler_lambda(p, xi)));
  }
  return {worst <= 1e-5, "max rel err " + sci(worst) + " for |xi| in {0.5,1,2,5}"};
}

// 4. Sign trichotomy of the assembled energy on a (|B|, |xi|) grid, both
// orientations, classified against the critical frequencies computed on
// the same trial space.  Grid points inside a 0.1% band around a threshold
// are skipped; the fixed grids never land there for the base parameters.
Verdict check_trichotomy() {
  const FluidParams p = base_params();
  const double bc = base_bc(p);
  HermiteSpace space(build_mesh(24, 0.3));
  int stable_cells = 0;
  int unstable_cells = 0;
  int skipped = 0;
  bool ok = true;
  for (double bfac : {0.25, 0.5, 0.75, 1.0, 1.25}) {
    for (Orientation o : {Orientation::Vertical, Orientation::Horizontal}) {
      MagneticConfig mag(o, bfac * bc);
      bool supercritical = false;
      double threshold = 0.0;
      try {
        threshold = (o == Orientation::Vertical)
                        ? critical_freq_vertical(p, mag, space)
                        : critical_freq_horizontal_h2(p, mag, space);
      } catch (const SupercriticalFieldError&) {
        supercritical = true;
      }
      for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const Frequency xi(x);
        bool stable_pred = true;
        if (!supercritical) {
          if (std::abs(x - threshold) <= 1e-3 * std::max(1.0, threshold)) {
            ++skipped;
            continue;
          }
          stable_pred = (o == Orientation::Vertical) ? (x < threshold) : (x > threshold);
        }
        const FormSet forms = assemble_forms(space, p, mag, xi);
        if (stable_pred) {
          SymmetricPencil pencil(xi.magnitude_sq() * forms.E0, forms.J);
          const double scale = std::max(1.0, pencil.operator_norm());
          ok = ok && pencil.smallest() >= -1e-10 * scale;
          ++stable_cells;
        } else {
          const double s0 = 1e-8 * char_rate(p, xi);
          ok = ok && alpha_from_forms(forms, s0).alpha < 0.0;
          ++unstable_cells;
        }
      }
    }
  }
  std::ostringstream detail;
  detail << stable_cells << " stable / " << unstable_cells << " unstable cells, " << skipped
         << " skipped";
  return {ok, detail.str()};
}

// 5. alpha(s) strictly increasing on a 64-point s-grid for seeded random
// configurations; on the unstable ones Phi(s) = s/sqrt(-alpha) is strictly
// increasing and Phi - 1 changes sign exactly once.
Verdict check_monotonicity(unsigned seed) {
  std::mt19937 gen(seed);
  auto uniform = [&gen](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  };
  HermiteSpace space(build_mesh(16, 0.0));
  constexpr int kGrid = 64;
  int unstable_count = 0;
  bool ok = true;
  for (int k = 0; k < 10 && ok; ++k) {
    const double rho_m = uniform(0.5, 1.5);
    const FluidParams p(rho_m + uniform(0.5, 2.0), rho_m, uniform(0.05, 1.0),
                        uniform(0.05, 1.0), uniform(0.5, 2.0));
    const Orientation o = (k % 2 == 0) ? Orientation::Vertical : Orientation::Horizontal;
    const double bfac = (k < 8) ? uniform(0.05, 0.8) : uniform(1.05, 1.4);
    MagneticConfig mag(o, bfac * base_bc(p));

    // Place the wave number relative to the critical one so the subcritical
    // cases are genuinely unstable.
    double x = uniform(0.5, 4.0);
    if (k < 8) {
      x = (o == Orientation::Vertical)
              ? critical_freq_vertical(p, mag, space) * uniform(1.5, 4.0)
              : critical_freq_horizontal_h2(p, mag, space) * uniform(0.2, 0.8);
    }
    const Frequency xi(x);

    const std::optional<double> edge = find_s_star(p, mag, xi, space);
    double smax = 3.0 * char_rate(p, xi);
    if (edge) {
      // Grid up to the midpoint of the fixed point and the window edge:
      // alpha stays negative on the whole grid and Phi crosses 1 once.
      const double fp = solve_growth_rate(p, mag, xi, space).lambda;
      smax = fp + 0.5 * (*edge - fp);
      ++unstable_count;
    }

    const FormSet forms = assemble_forms(space, p, mag, xi);
    std::vector<double> alpha(kGrid), phi(kGrid);
    for (int i = 0; i < kGrid; ++i) {
      const double s = smax * i / (kGrid - 1);
      alpha[i] = alpha_from_forms(forms, s).alpha;
      phi[i] = alpha[i] < 0.0 ? s / std::sqrt(-alpha[i]) : 0.0;
    }
    for (int i = 0; i + 1 < kGrid; ++i) ok = ok && alpha[i + 1] > alpha[i];
    if (edge) {
      int crossings = 0;
      for (int i = 0; i + 1 < kGrid; ++i) {
        ok = ok && phi[i + 1] > phi[i];
        if ((phi[i] < 1.0) != (phi[i + 1] < 1.0)) ++crossings;
      }
      ok = ok && crossings == 1;
    }
  }
  std::ostringstream detail;
  detail << "10 seeded configs, " << unstable_count << " with an instability window";
  return {ok, detail.str()};
}

// Dispersion sweeps shared by the fixed-point-quality and bound checks.
struct SweepBundle {
  DispersionCurve vertical;
  DispersionCurve horizontal;
  double bound = 0.0;
  bool built = false;
};

void build_sweeps(SweepBundle& sb) {
  if (sb.built) return;
  const FluidParams p = base_params();
  const double bc = base_bc(p);
  // Uniform mesh: grading packs near-degenerate elements at the interface
  // whose 1/h^3 stiffness entries raise the fixed-point noise floor, while
  // the rates themselves agree to six digits with the graded meshes here.
  HermiteSpace space(build_mesh(32, 0.0));

  MagneticConfig vmag(Orientation::Vertical, 0.3 * bc);
  const double xivc = critical_freq_vertical(p, vmag, space);
  sb.vertical = dispersion_sweep(
      p, vmag, make_grid(GridSpec{1.02 * xivc, std::max(6.0, 5.0 * xivc), 21, true, 0.0}),
      space);
  sb.bound = growth_bound(p, vmag);

  MagneticConfig hmag(Orientation::Horizontal, 0.5 * bc);
  const double xihc = critical_freq_horizontal_h2(p, hmag, space);
  sb.horizontal = dispersion_sweep(
      p, hmag, make_grid(GridSpec{0.03 * xihc, 0.97 * xihc, 21, false, 0.0}), space);
  sb.built = true;
}

// 6. Every unstable sample of the sweeps meets the fixed-point gap and
// quadratic-pencil residual tolerances.
Verdict check_fixed_point_quality(SweepBundle& sb) {
  build_sweeps(sb);
  int unstable = 0;
  double max_gap = 0.0;
  double max_res = 0.0;
  bool ok = true;
  for (const DispersionCurve* curve : {&sb.vertical, &sb.horizontal}) {
    for (const GrowthResult& r : curve->samples) {
      ok = ok && !r.failure;
      if (r.failure || r.status != Stability::Unstable) continue;
      ++unstable;
      max_gap = std::max(max_gap, r.phi_gap);
      max_res = std::max(max_res, r.pencil_residual);
    }
  }
  ok = ok && unstable >= 20 && max_gap <= 1e-10 && max_res <= 1e-8;
  std::ostringstream detail;
  detail << unstable << " unstable samples, max |Phi-1| " << sci(max_gap)
         << ", max pencil residual " << sci(max_res);
  return {ok, detail.str()};
}

// 7. Every vertical rate sits under 2 sqrt(g[rho]) / (|B| rho_+^{1/4});
// the rates decay to < 10% of the curve maximum at the grid points nearest
// the critical frequencies, and the horizontal curve dies at |xi| -> 0.
Verdict check_bound_and_decay(SweepBundle& sb) {
  build_sweeps(sb);
  bool ok = true;
  double vmax = 0.0;
  for (const GrowthResult& r : sb.vertical.samples) {
    ok = ok && !r.failure && r.status == Stability::Unstable && r.lambda <= sb.bound;
    vmax = std::max(vmax, r.lambda);
  }
  double hmax = 0.0;
  for (const GrowthResult& r : sb.horizontal.samples) {
    ok = ok && !r.failure && r.status == Stability::Unstable;
    hmax = std::max(hmax, r.lambda);
  }
  const double v_edge = sb.vertical.samples.front().lambda / vmax;
  const double h_zero = sb.horizontal.samples.front().lambda / hmax;
  const double h_edge = sb.horizontal.samples.back().lambda / hmax;
  ok = ok && v_edge < 0.1 && h_zero < 0.1 && h_edge < 0.1;
  std::ostringstream detail;
  detail << "max rate " << sci(vmax) << " <= bound " << sci(sb.bound) << "; edge ratios "
         << sci(v_edge) << ", " << sci(h_zero) << ", " << sci(h_edge);
  return {ok, detail.str()};
}

// 8. The natural interface conditions, not imposed on the space, must be
// recovered under refinement with empirical order >= 1.
Verdict check_jump_refinement() {
  const FluidParams p = base_params();
  const double bc = base_bc(p);
  MagneticConfig mag(Orientation::Vertical, 0.3 * bc);
  double r1[3], r2[3];
  int idx = 0;
  Frequency xi(3.0);
  for (int n : {16, 32, 64}) {
    HermiteSpace space(build_mesh(n, 0.3));
    if (idx == 0) {
      const double xivc = critical_freq_vertical(p, mag, space);
      xi = Frequency(std::max(3.0, 3.0 * xivc));
    }
    const GrowthResult g = solve_growth_rate(p, mag, xi, space);
    if (g.status != Stability::Unstable) return {false, "sample unexpectedly stable"};
    // At the fixed point the eigenfunction solves the modified problem with
    // viscosity weight s = lambda and eigenvalue -lambda^2.
    const ModifiedEigenResult m{-g.lambda * g.lambda, g.psi, g.lambda, g.xi,
                                g.pencil_residual};
    const JumpResiduals jr = jump_residuals(m, p, mag, space);
    r1[idx] = jr.r1;
    r2[idx] = jr.r2;
    ++idx;
  }
  double order_sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    order_sum += std::log2(r1[i] / r1[i + 1]);
    order_sum += std::log2(r2[i] / r2[i + 1]);
  }
  const double order = order_sum / 4.0;
  std::ostringstream detail;
  detail << "residuals " << sci(r1[0]) << "->" << sci(r1[2]) << " and " << sci(r2[0]) << "->"
         << sci(r2[2]) << ", mean order " << std::fixed << std::setprecision(2) << order;
  return {order >= 1.0, detail.str()};
}

// 9. Time integration: an eigenmode-initialized trajectory grows at the
// eigenvalue rate to 1%; supercritical trajectories dissipate monotonically;
// undamped trajectories conserve the energy.
Verdict check_evolution(unsigned seed) {
  const FluidParams p = base_params();
  const double bc = base_bc(p);
  HermiteSpace space(build_mesh(24, 0.4));

  MagneticConfig vmag(Orientation::Vertical, 0.3 * bc);
  const double xivc = critical_freq_vertical(p, vmag, space);
  const Frequency xi(std::max(2.0, 3.0 * xivc));
  const GrowthResult g = solve_growth_rate(p, vmag, xi, space);
  if (g.status != Stability::Unstable) return {false, "sample unexpectedly stable"};
  const double dt = 1.0 / (200.0 * g.lambda);
  const ModeTrajectory grow =
      evolve_mode(p, vmag, xi, space, g.psi, g.lambda * g.psi, dt, 5.0 / g.lambda);
  const double fit = fit_growth_exponent(grow);
  const double fit_rel = rel_err(fit, g.lambda);
  bool ok = fit_rel <= 0.01;

  std::mt19937 gen(seed + 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector a0(space.dof_count()), v0(space.dof_count());
  for (int i = 0; i < space.dof_count(); ++i) {
    a0[i] = normal(gen);
    v0[i] = normal(gen);
  }

  MagneticConfig smag(Orientation::Vertical, 1.2 * bc);
  const ModeTrajectory damped = evolve_mode(p, smag, xi, space, a0, v0, 0.01, 10.0);
  for (std::size_t n = 0; n + 1 < damped.energy.size(); ++n)
    ok = ok && damped.energy[n + 1] <= damped.energy[n] + 1e-10 * (1.0 + std::abs(damped.energy[n]));

  const FluidParams inviscid(p.rho_plus, p.rho_minus, 0.0, 0.0, p.g);
  const ModeTrajectory frozen = evolve_mode(inviscid, smag, xi, space, a0, v0, 0.01, 10.0);
  double drift = 0.0;
  for (double e : frozen.energy) drift = std::max(drift, std::abs(e - frozen.energy.front()));
  const double drift_rel = drift / std::abs(frozen.energy.front());
  ok = ok && drift_rel <= 1e-8;

  std::ostringstream detail;
  detail << "fit err " << sci(fit_rel) << ", dissipation monotone, conservation drift "
         << sci(drift_rel);
  return {ok, detail.str()};
}

// 10. Rates and modes are exactly even in xi, and recomputed outputs are
// byte-identical.
Verdict check_evenness_determinism() {
  const FluidParams p = base_params();
  const double bc = base_bc(p);
  HermiteSpace space(build_mesh(16, 0.0));
  bool ok = true;

  const std::pair<MagneticConfig, Frequency> cases[] = {
      {MagneticConfig(Orientation::Vertical, 0.3 * bc), Frequency(2.0, 0.7)},
      {MagneticConfig(Orientation::Horizontal, 0.5 * bc), Frequency(1.5, 0.4)},
  };
  for (const auto& [mag, xi] : cases) {
    const GrowthResult a = solve_growth_rate(p, mag, xi, space);
    const GrowthResult b = solve_growth_rate(p, mag, Frequency(-xi.xi1, -xi.xi2), space);
    ok = ok && a.status == b.status && a.lambda == b.lambda && a.s_star == b.s_star &&
         a.psi0 == b.psi0 && a.iterations == b.iterations;
    ok = ok && a.psi.size() == b.psi.size() &&
         (a.psi.size() == 0 || (a.psi - b.psi).cwiseAbs().maxCoeff() == 0.0);
  }

  auto render = [&]() {
    const MagneticConfig mag(Orientation::Vertical, 0.3 * bc);
    HermiteSpace hs(build_mesh(16, 0.0));
    LinearSpace p1(build_mesh(16, 0.0));
    RunConfig cfg{p, mag, 16, 0.0, GridSpec{1.0, 4.0, 8, false, 0.0}};
    const DispersionCurve curve = dispersion_sweep(p, mag, make_grid(cfg.grid), hs);
    Report report{cfg, compute_critical_values(p, mag, p1, hs), curve, growth_bound(p, mag),
                  true, {}};
    std::ostringstream out;
    write_dispersion_csv(curve, out);
    write_report(report, out);
    write_dispersion_svg(curve, out);
    return out.str();
  };
  const std::string first = render();
  const std::string second = render();
  ok = ok && !first.empty() && first == second;
  std::ostringstream detail;
  detail << "bitwise even at +-xi; " << first.size() << " recomputed bytes identical";
  return {ok, detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& log, unsigned seed) {
  std::vector<CriterionResult> verdicts;
  SweepBundle sweeps;

  auto run = [&](int index, const std::string& name, auto&& fn) {
    CriterionResult result{index, name, false, ""};
    try {
      const Verdict v = fn();
      result.passed = v.first;
      result.detail = v.second;
    } catch (const Error& e) {
      result.passed = false;
      result.detail = std::string("error: ") + e.what();
    }
    log << '[' << (index < 10 ? " " : "") << index << "] "
        << (result.passed ? "PASS" : "FAIL") << "  " << name << " (" << result.detail
        << ")\n";
    log.flush();
    verdicts.push_back(std::move(result));
  };

  run(1, "critical field matches the two-point oracle", check_critical_field);
  run(2, "horizontal critical frequency matches the transcendental root",
      check_horizontal_critical);
  run(3, "inviscid rates match the closed-form dispersion relation", check_euler_baseline);
  run(4, "energy sign trichotomy follows the critical frequencies", check_trichotomy);
  run(5, "alpha and Phi are strictly increasing in s", [&] { return check_monotonicity(seed); });
  run(6, "fixed points meet the gap and residual tolerances",
      [&] { return check_fixed_point_quality(sweeps); });
  run(7, "vertical bound holds and the curves decay at the thresholds",
      [&] { return check_bound_and_decay(sweeps); });
  run(8, "interface jump residuals converge under refinement", check_jump_refinement);
  run(9, "time integration reproduces, damps and conserves modes",
      [&] { return check_evolution(seed); });
  run(10, "results are even in xi and byte-stable", check_evenness_determinism);

  int passed = 0;
  for (const CriterionResult& r : verdicts) passed += r.passed ? 1 : 0;
  log << "acceptance: " << passed << "/" << verdicts.size() << " criteria passed\n";
  return verdicts;
}

}  // namespace mhdrt
