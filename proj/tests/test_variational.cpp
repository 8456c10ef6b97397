// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "mhdrt/variational.hpp"

using namespace mhdrt;

namespace {

// Determinant condition for the vertical critical frequency, built from the
// closed-form side solutions psi = a + b x + c cosh(kx) + d sinh(kx) of
// psi'''' = k^2 psi''.  Eight conditions: clamped walls, continuity of
// psi, psi', psi'' at the interface, and the third-derivative flux balance
// |B|^2 [[psi''']] = k^2 g[rho] psi(0) that stationarity of the potential
// imposes.  An entirely separate path from the finite element solve.
double vertical_det(double k, double b_sq, double g_jump) {
  Eigen::Matrix<double, 8, 8> m = Eigen::Matrix<double, 8, 8>::Zero();
  const double ch = std::cosh(k), sh = std::sinh(k);
  m(0, 0) = 1.0; m(0, 1) = -1.0; m(0, 2) = ch; m(0, 3) = -sh;   // psi(-1) = 0
  m(1, 1) = 1.0; m(1, 2) = -k * sh; m(1, 3) = k * ch;            // psi'(-1) = 0
  m(2, 4) = 1.0; m(2, 5) = 1.0; m(2, 6) = ch; m(2, 7) = sh;      // psi(+1) = 0
  m(3, 5) = 1.0; m(3, 6) = k * sh; m(3, 7) = k * ch;             // psi'(+1) = 0
  m(4, 0) = -1.0; m(4, 2) = -1.0; m(4, 4) = 1.0; m(4, 6) = 1.0;  // [[psi]] = 0
  m(5, 1) = -1.0; m(5, 3) = -k; m(5, 5) = 1.0; m(5, 7) = k;      // [[psi']] = 0
  m(6, 2) = -1.0; m(6, 6) = 1.0;                                 // [[psi'']] = 0
  // flux balance scaled by 1/k^2
  m(7, 0) = -g_jump; m(7, 2) = -g_jump; m(7, 3) = -b_sq * k; m(7, 7) = b_sq * k;
  return m.determinant();
}

double shoot_vertical_freq(double b_sq, double g_jump, double lo, double hi) {
  double flo = vertical_det(lo, b_sq, g_jump);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = vertical_det(mid, b_sq, g_jump);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("critical magnetic number has its closed form on every mesh") {
  const FluidParams p(2.0, 1.0, 0.3, 0.1, 1.0);
  // the gradient minimizer under psi(0) = 1 is the tent, so
  // |B|_c = sqrt(g [rho] / 2) exactly, independent of mesh and grading
  for (int n : {4, 8, 32}) {
    for (double grading : {0.0, 0.7}) {
      const LinearSpace space(build_mesh(n, grading));
      CHECK(critical_magnetic_number(p, space) ==
            doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    }
  }
  // quadrupled gravity doubles the critical number
  const FluidParams p4(2.0, 1.0, 0.3, 0.1, 4.0);
  const LinearSpace space(build_mesh(8, 0.0));
  CHECK(critical_magnetic_number(p4, space) ==
        doctest::Approx(2.0 * std::sqrt(0.5)).epsilon(1e-12));

  CHECK_THROWS_AS(critical_magnetic_number(FluidParams(1.0, 1.0, 0.1, 0.1, 1.0), space),
                  StableConfigurationError);
  CHECK_THROWS_AS(critical_magnetic_number(FluidParams(1.0, 2.0, 0.1, 0.1, 1.0), space),
                  StableConfigurationError);
}

TEST_CASE("horizontal threshold oracle solves its transcendental equation") {
  const FluidParams p(2.0, 1.0, 0.1, 0.1, 1.0);
  const MagneticConfig half(Orientation::Horizontal, 0.5);
  const double root = xi_hc_oracle(p, half);
  CHECK(2.0 * half.b_sq() * root / std::tanh(root) ==
        doctest::Approx(p.g * p.density_jump()).epsilon(1e-10));
  CHECK(root == doctest::Approx(1.915).epsilon(2e-3));

  // weak fields push the root out to g[rho]/(2|B|^2) where coth is flat
  const MagneticConfig weak(Orientation::Horizontal, 0.1 * std::sqrt(0.5));
  CHECK(std::abs(xi_hc_oracle(p, weak) - 100.0) < 1e-9);
  CHECK(xi_hc_oracle(p, weak) > root);

  CHECK_THROWS_AS(xi_hc_oracle(p, MagneticConfig(Orientation::Horizontal, 0.8)),
                  SupercriticalFieldError);
  CHECK_THROWS_AS(xi_hc_oracle(p, MagneticConfig(Orientation::Horizontal, 0.0)),
                  PreconditionError);
}

TEST_CASE("discrete horizontal thresholds agree with the oracle") {
  const FluidParams p(2.0, 1.0, 0.1, 0.1, 1.0);
  const MagneticConfig mag(Orientation::Horizontal, 0.5 * std::sqrt(0.5));
  const double oracle = xi_hc_oracle(p, mag);

  const LinearSpace p1(build_mesh(64, 0.8));
  const HermiteSpace h2(build_mesh(64, 0.8));
  const double xi_p1 = critical_freq_horizontal(p, mag, p1);
  const double xi_h2 = critical_freq_horizontal_h2(p, mag, h2);
  CHECK(std::abs(xi_p1 - oracle) / oracle < 2e-3);
  CHECK(std::abs(xi_h2 - oracle) / oracle < 2e-4);
  CHECK(std::abs(xi_p1 - xi_h2) / oracle < 2e-3);
}

TEST_CASE("vertical threshold matches the shooting determinant") {
  const FluidParams p(2.0, 1.0, 0.1, 0.1, 1.0);
  const HermiteSpace space(build_mesh(64, 0.3));
  for (double b : {0.3, 0.5, 0.65}) {
    const MagneticConfig mag(Orientation::Vertical, b);
    const double fe = critical_freq_vertical(p, mag, space);
    const double shot = shoot_vertical_freq(mag.b_sq(), p.g * p.density_jump(),
                                            0.5 * fe, 2.0 * fe);
    CHECK(std::abs(fe - shot) / shot < 2e-6);
  }
}

TEST_CASE("thresholds move monotonically with the field") {
  const FluidParams p(2.0, 1.0, 0.1, 0.1, 1.0);
  const double bc = std::sqrt(0.5);
  const HermiteSpace hermite(build_mesh(32, 0.3));
  const LinearSpace p1(build_mesh(128, 0.8));

  // stronger vertical fields stabilize a wider band of low frequencies
  const double v90 = critical_freq_vertical(p, MagneticConfig(Orientation::Vertical, 0.90 * bc),
                                            hermite);
  const double v99 = critical_freq_vertical(p, MagneticConfig(Orientation::Vertical, 0.99 * bc),
                                            hermite);
  CHECK(v90 < v99);

  // stronger horizontal fields shrink the unstable band from above
  const double h10 = critical_freq_horizontal(
      p, MagneticConfig(Orientation::Horizontal, 0.1 * bc), p1);
  const double h50 = critical_freq_horizontal(
      p, MagneticConfig(Orientation::Horizontal, 0.5 * bc), p1);
  CHECK(h10 > h50);
}

TEST_CASE("critical frequencies reject out-of-range fields") {
  const FluidParams p(2.0, 1.0, 0.1, 0.1, 1.0);
  const HermiteSpace hermite(build_mesh(8, 0.0));
  const LinearSpace p1(build_mesh(8, 0.0));
  const double bc = std::sqrt(0.5);

  for (double b : {bc, 1.1 * bc}) {
    CHECK_THROWS_AS(
        critical_freq_vertical(p, MagneticConfig(Orientation::Vertical, b), hermite),
        SupercriticalFieldError);
    CHECK_THROWS_AS(
        critical_freq_horizontal(p, MagneticConfig(Orientation::Horizontal, b), p1),
        SupercriticalFieldError);
    CHECK_THROWS_AS(
        critical_freq_horizontal_h2(p, MagneticConfig(Orientation::Horizontal, b), hermite),
        SupercriticalFieldError);
  }
  CHECK_THROWS_AS(
      critical_freq_vertical(p, MagneticConfig(Orientation::Vertical, 0.0), hermite),
      PreconditionError);
  CHECK_THROWS_AS(
      critical_freq_vertical(p, MagneticConfig(Orientation::Horizontal, 0.5), hermite),
      OrientationMismatchError);
  CHECK_THROWS_AS(
      critical_freq_horizontal(p, MagneticConfig(Orientation::Vertical, 0.5), p1),
      OrientationMismatchError);
}

TEST_CASE("combined critical values use sentinels outside the open window") {
  const FluidParams p(2.0, 1.0, 0.1, 0.1, 1.0);
  const LinearSpace p1(build_mesh(64, 0.8));
  const HermiteSpace hermite(build_mesh(32, 0.3));
  constexpr double inf = std::numeric_limits<double>::infinity();

  const CriticalValues off = compute_critical_values(
      p, MagneticConfig(Orientation::Vertical, 0.0), p1, hermite);
  CHECK(off.xi_vc == 0.0);  // no field: every frequency is unstable
  CHECK(off.xi_hc == inf);
  CHECK_FALSE(off.xi_hc_oracle_value.has_value());

  const CriticalValues strong = compute_critical_values(
      p, MagneticConfig(Orientation::Vertical, 2.0), p1, hermite);
  CHECK(strong.xi_vc == inf);  // above critical: nothing grows
  CHECK(strong.xi_hc == 0.0);

  for (Orientation o : {Orientation::Vertical, Orientation::Horizontal}) {
    const CriticalValues cv =
        compute_critical_values(p, MagneticConfig(o, 0.4), p1, hermite);
    CHECK(cv.b_critical == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(cv.xi_vc > 0.0);
    CHECK(std::isfinite(cv.xi_vc));
    REQUIRE(cv.xi_hc_oracle_value.has_value());
    CHECK(std::abs(cv.xi_hc - *cv.xi_hc_oracle_value) / *cv.xi_hc_oracle_value < 3e-3);
  }
}
