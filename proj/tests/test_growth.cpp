// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mhdrt/growth.hpp"
#include "mhdrt/modified_problem.hpp"
#include "mhdrt/report.hpp"
#include "mhdrt/variational.hpp"

using namespace mhdrt;

namespace {
const FluidParams kParams(2.0, 1.0, 0.1, 0.1, 1.0);
const MagneticConfig kHalf(Orientation::Vertical, 0.5);
}  // namespace

TEST_CASE("instability window edge changes the sign of the eigenvalue") {
  const HermiteSpace space(build_mesh(32, 0.3));
  const double xi_vc = critical_freq_vertical(kParams, kHalf, space);
  const Frequency xi(2.0 * xi_vc);

  const auto edge = find_s_star(kParams, kHalf, xi, space);
  REQUIRE(edge.has_value());
  CHECK(alpha_of_s(*edge * (1.0 - 1e-6), kParams, kHalf, xi, space).alpha < 0.0);
  CHECK(alpha_of_s(*edge * (1.0 + 1e-6), kParams, kHalf, xi, space).alpha > 0.0);

  // no window below the critical frequency or above the critical field
  CHECK_FALSE(find_s_star(kParams, kHalf, Frequency(0.5 * xi_vc), space).has_value());
  CHECK_FALSE(find_s_star(kParams, MagneticConfig(Orientation::Vertical, 1.0), Frequency(2.0),
                          space)
                  .has_value());
}

TEST_CASE("fixed point solves the dispersion relation within tolerance") {
  const HermiteSpace space(build_mesh(32, 0.3));
  const double xi_vc = critical_freq_vertical(kParams, kHalf, space);
  const GrowthResult g = solve_growth_rate(kParams, kHalf, Frequency(2.0 * xi_vc), space);

  REQUIRE(g.status == Stability::Unstable);
  CHECK_FALSE(g.failure.has_value());
  CHECK(g.lambda > 0.0);
  CHECK(g.lambda <= growth_bound(kParams, kHalf));
  CHECK(g.lambda < g.s_star);  // the fixed point sits inside the window
  CHECK(g.phi_gap <= 1e-10);
  CHECK(g.pencil_residual <= 1e-8);
  CHECK(g.iterations <= 200);
  CHECK(g.psi0 == space.eval(g.psi, 0.0));
  CHECK(g.psi0 > 0.0);  // sign canonicalized upward at the interface

  // the eigenfunction solves the weighted problem at s = lambda
  const ModifiedEigenResult at_fp = alpha_of_s(g.lambda, kParams, kHalf, g.xi, space);
  CHECK(std::sqrt(std::abs(at_fp.alpha)) == doctest::Approx(g.lambda).epsilon(1e-9));

  const GrowthResult stable =
      solve_growth_rate(kParams, MagneticConfig(Orientation::Vertical, 1.0), Frequency(2.0),
                        space);
  CHECK(stable.status == Stability::Stable);
  CHECK_FALSE(stable.failure.has_value());
}

TEST_CASE("a priori bound has its closed form and scaling") {
  const double bound = growth_bound(kParams, kHalf);
  CHECK(bound == doctest::Approx(2.0 * std::sqrt(1.0) /
                                 (0.5 * std::pow(2.0, 0.25))).epsilon(1e-15));
  CHECK(bound == doctest::Approx(3.3636).epsilon(1e-3));
  const double doubled = growth_bound(kParams, MagneticConfig(Orientation::Vertical, 1.0));
  CHECK(doubled == doctest::Approx(0.5 * bound).epsilon(1e-15));

  CHECK_THROWS_AS(growth_bound(kParams, MagneticConfig(Orientation::Horizontal, 0.5)),
                  OrientationMismatchError);
  CHECK_THROWS_AS(growth_bound(kParams, MagneticConfig(Orientation::Vertical, 0.0)),
                  PreconditionError);
  CHECK_THROWS_AS(growth_bound(FluidParams(1.0, 2.0, 0.1, 0.1, 1.0), kHalf),
                  StableConfigurationError);
}

TEST_CASE("inviscid reference rate and its discrete Green-function twin") {
  const double k = 1.0;
  const double expect = std::sqrt(kParams.g * kParams.density_jump() * k * std::tanh(k) /
                                  (kParams.rho_plus + kParams.rho_minus));
  CHECK(euler_lambda(kParams, Frequency(k)) == doctest::Approx(expect).epsilon(1e-15));
  CHECK(euler_lambda(kParams, Frequency(k)) == doctest::Approx(0.50385).epsilon(1e-4));

  const LinearSpace space(build_mesh(128, 0.3));
  for (double kk : {1.0, 3.0}) {
    const double discrete = euler_lambda_discrete(kParams, Frequency(kk), space);
    const double exact = euler_lambda(kParams, Frequency(kk));
    CHECK(std::abs(discrete - exact) / exact < 1e-4);
  }

  CHECK_THROWS_AS(euler_lambda(kParams, Frequency(0.0, 0.0)), DegenerateFrequencyError);
  CHECK_THROWS_AS(euler_lambda(FluidParams(1.0, 1.0, 0.1, 0.1, 1.0), Frequency(1.0)),
                  StableConfigurationError);
  CHECK_THROWS_AS(euler_lambda_discrete(FluidParams(1.0, 2.0, 0.1, 0.1, 1.0), Frequency(1.0),
                                        space),
                  StableConfigurationError);
}

TEST_CASE("shrinking viscosity raises the rate toward the inviscid limit") {
  const HermiteSpace space(build_mesh(32, 0.3));
  const MagneticConfig faint(Orientation::Vertical, 1e-6);
  const double euler = euler_lambda(kParams, Frequency(1.0));

  double prev = 0.0;
  double first_gap = 0.0;
  for (double mu : {0.4, 0.2, 0.1, 0.05}) {
    const FluidParams p(2.0, 1.0, mu, mu, 1.0);
    const GrowthResult g = solve_growth_rate(p, faint, Frequency(1.0), space);
    REQUIRE(g.status == Stability::Unstable);
    CHECK(g.lambda > prev);
    CHECK(g.lambda < euler);
    if (first_gap == 0.0) first_gap = euler - g.lambda;
    prev = g.lambda;
  }
  CHECK(euler - prev < 0.5 * first_gap);
}

TEST_CASE("sweep records failures without aborting") {
  const FluidParams inviscid(2.0, 1.0, 0.0, 0.0, 1.0);
  const HermiteSpace space(build_mesh(8, 0.0));
  const auto grid = make_grid(GridSpec{1.0, 2.0, 3, false, 0.0});

  // with zero viscosity the window never closes: every sample must carry
  // a failure note and the sweep must still return all of them
  const DispersionCurve broken =
      dispersion_sweep(inviscid, MagneticConfig(Orientation::Vertical, 1e-6), grid, space);
  REQUIRE(broken.samples.size() == 3);
  for (const GrowthResult& r : broken.samples) {
    CHECK(r.failure.has_value());
    CHECK(r.status != Stability::Unstable);
  }
  CHECK(broken.lambda_max == 0.0);

  const MagneticConfig weak(Orientation::Vertical, 0.3 * std::sqrt(0.5));
  const double xi_vc = critical_freq_vertical(kParams, weak, space);
  const DispersionCurve healthy = dispersion_sweep(
      kParams, weak, make_grid(GridSpec{1.5 * xi_vc, 4.0 * xi_vc, 5, false, 0.0}), space);
  double best = 0.0;
  for (const GrowthResult& r : healthy.samples) {
    CHECK_FALSE(r.failure.has_value());
    CHECK(r.status == Stability::Unstable);
    best = std::max(best, r.lambda);
  }
  CHECK(healthy.lambda_max == best);
}

TEST_CASE("rates vary continuously along the dispersion curve") {
  const MagneticConfig weak(Orientation::Vertical, 0.3 * std::sqrt(0.5));
  const HermiteSpace space(build_mesh(16, 0.0));
  const double xi_vc = critical_freq_vertical(kParams, weak, space);

  double coarse_diff = 0.0, fine_diff = 0.0;
  for (int count : {7, 13}) {
    const auto grid = make_grid(GridSpec{1.5 * xi_vc, 4.0 * xi_vc, count, false, 0.0});
    const double dxi = grid[1].xi1 - grid[0].xi1;
    double prev = -1.0, worst = 0.0;
    for (const Frequency& f : grid) {
      const double lam = solve_growth_rate(kParams, weak, f, space).lambda;
      if (prev >= 0.0) worst = std::max(worst, std::abs(lam - prev));
      prev = lam;
    }
    CHECK(worst < 0.5 * dxi);  // empirically stable Lipschitz constant
    (count == 7 ? coarse_diff : fine_diff) = worst;
  }
  CHECK(fine_diff < coarse_diff);
}

TEST_CASE("results are even in the wave vector down to the last bit") {
  const MagneticConfig weak(Orientation::Vertical, 0.3 * std::sqrt(0.5));
  const HermiteSpace space(build_mesh(16, 0.2));
  const GrowthResult a = solve_growth_rate(kParams, weak, Frequency(2.5, 0.9), space);
  const GrowthResult b = solve_growth_rate(kParams, weak, Frequency(-2.5, -0.9), space);
  REQUIRE(a.status == Stability::Unstable);
  CHECK(a.status == b.status);
  CHECK(a.lambda == b.lambda);
  CHECK(a.s_star == b.s_star);
  CHECK(a.psi0 == b.psi0);
  CHECK(a.iterations == b.iterations);
  CHECK((a.psi - b.psi).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reconstructed mode satisfies the flow equations") {
  double prev_mom = 1e300, prev_tan = 1e300;
  double mom16 = 0.0, tan16 = 0.0;
  for (int n : {16, 32, 64}) {
    const HermiteSpace space(build_mesh(n, 0.3));
    const double xi_vc = critical_freq_vertical(kParams, kHalf, space);
    const Frequency xi(2.0 * xi_vc);
    const GrowthResult g = solve_growth_rate(kParams, kHalf, xi, space);
    REQUIRE(g.status == Stability::Unstable);
    const ModeComponents mode = reconstruct_mode(g, kParams, kHalf, space);

    const double lam = g.lambda;
    const double k2 = xi.magnitude_sq();
    const double b2 = kHalf.b_sq();
    REQUIRE(mode.x.size() == mode.pressure.size());
    REQUIRE(mode.x.size() == 10 * static_cast<std::size_t>(n) + 2);

    // the interface row appears twice, lower side first, displacement
    // continuous, pressure jumping
    std::size_t i0 = 0;
    while (mode.x[i0] != 0.0) ++i0;
    REQUIRE(mode.x[i0 + 1] == 0.0);
    CHECK(mode.psi[i0] == mode.psi[i0 + 1]);
    CHECK(mode.psi_prime[i0] == mode.psi_prime[i0 + 1]);
    CHECK(std::abs(mode.pressure[i0 + 1] - mode.pressure[i0]) > 0.0);

    double div_worst = 0.0, mom_worst = 0.0, mom_scale = 0.0;
    for (std::size_t i = 0; i < mode.x.size(); ++i) {
      // incompressibility holds exactly by construction
      div_worst = std::max(div_worst, std::abs(xi.xi1 * mode.phi[i] +
                                               xi.xi2 * mode.theta[i] + mode.psi_prime[i]));
      const bool upper = i > i0;
      const Side side = (mode.x[i] == 0.0) ? (upper ? Side::Plus : Side::Minus) : Side::Auto;
      const double phi2 = -xi.xi1 * space.eval(g.psi, mode.x[i], 3, side) / k2;
      const double mu = kParams.mu(upper);
      const double rho = kParams.rho(upper);
      mom_worst = std::max(
          mom_worst, std::abs(lam * lam * rho * mode.phi[i] - lam * xi.xi1 * mode.pressure[i] +
                              mu * lam * (k2 * mode.phi[i] - phi2) - b2 * phi2));
      mom_scale = std::max(mom_scale,
                           std::abs(lam * lam * rho * mode.phi[i]) +
                               std::abs(lam * xi.xi1 * mode.pressure[i]) +
                               std::abs(mu * lam * k2 * mode.phi[i]) +
                               std::abs((mu * lam + b2) * phi2));
    }
    CHECK(div_worst < 1e-13);

    const double mom = mom_worst / mom_scale;
    CHECK(mom < 0.75 * prev_mom);  // in-plane momentum residual shrinks with the mesh
    prev_mom = mom;
    if (n == 16) mom16 = mom;

    // tangential stress continuity, using the sign the divergence-free
    // reduction makes self-consistent with the interior equations
    auto traction = [&](bool upper, Side side) {
      const double dphi = -xi.xi1 * space.eval(g.psi, 0.0, 2, side) / k2;
      return kParams.mu(upper) * lam * (xi.xi1 * space.eval(g.psi, 0.0) - dphi) - b2 * dphi;
    };
    const double tm = traction(false, Side::Minus);
    const double tp = traction(true, Side::Plus);
    const double tan_rel = std::abs(tp - tm) / std::max(std::abs(tp), std::abs(tm));
    CHECK(tan_rel < 0.5 * prev_tan);
    prev_tan = tan_rel;
    if (n == 16) tan16 = tan_rel;
  }
  CHECK(mom16 < 0.12);
  CHECK(tan16 < 1e-5);
}

TEST_CASE("mode reconstruction refuses stable samples") {
  const HermiteSpace space(build_mesh(8, 0.0));
  const MagneticConfig strong(Orientation::Vertical, 1.0);
  const GrowthResult stable = solve_growth_rate(kParams, strong, Frequency(2.0), space);
  REQUIRE(stable.status == Stability::Stable);
  CHECK_THROWS_AS(reconstruct_mode(stable, kParams, strong, space), NoModeError);
}
