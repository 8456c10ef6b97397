// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mhdrt/mesh.hpp"
#include "mhdrt/spaces.hpp"
#include "mhdrt/types.hpp"

using namespace mhdrt;

namespace {
double quartic(double x) { return (1.0 - x * x) * (1.0 - x * x); }
double quartic_d(double x) { return -4.0 * x * (1.0 - x * x); }
}  // namespace

TEST_CASE("fluid parameter validation") {
  CHECK_THROWS_AS(FluidParams(0.0, 1.0, 0.1, 0.1, 1.0), PreconditionError);
  CHECK_THROWS_AS(FluidParams(2.0, -1.0, 0.1, 0.1, 1.0), PreconditionError);
  CHECK_THROWS_AS(FluidParams(2.0, 1.0, -0.1, 0.1, 1.0), PreconditionError);
  CHECK_THROWS_AS(FluidParams(2.0, 1.0, 0.1, -0.1, 1.0), PreconditionError);
  CHECK_THROWS_AS(FluidParams(2.0, 1.0, 0.1, 0.1, 0.0), PreconditionError);
  CHECK_THROWS_AS(FluidParams(2.0, 1.0, 0.1, 0.1, -9.8), PreconditionError);

  const FluidParams p(2.0, 1.0, 0.3, 0.1, 9.8);
  CHECK(p.density_jump() == 1.0);
  CHECK(p.rayleigh_taylor());
  CHECK(p.rho(true) == 2.0);
  CHECK(p.rho(false) == 1.0);
  CHECK(p.mu(true) == 0.3);
  CHECK(p.mu(false) == 0.1);

  // light-on-top and matched densities are constructible but not unstable
  CHECK_FALSE(FluidParams(1.0, 1.0, 0.1, 0.1, 1.0).rayleigh_taylor());
  CHECK(FluidParams(1.0, 2.0, 0.0, 0.0, 1.0).density_jump() == -1.0);
}

TEST_CASE("magnetic configuration and frequency") {
  CHECK_THROWS_AS(MagneticConfig(Orientation::Vertical, -0.5), PreconditionError);
  const MagneticConfig m(Orientation::Horizontal, 0.5);
  CHECK(m.b_sq() == 0.25);
  CHECK(MagneticConfig(Orientation::Vertical, 0.0).b_sq() == 0.0);

  const Frequency xi(3.0, 4.0);
  CHECK(xi.magnitude_sq() == 25.0);
  CHECK(xi.magnitude() == 5.0);
  CHECK(Frequency(2.0).xi2 == 0.0);
}

TEST_CASE("uniform mesh layout") {
  const InterfaceMesh mesh = build_mesh(4, 0.0);
  REQUIRE(mesh.node_count() == 9);
  CHECK(mesh.element_count() == 8);
  const double expect[9] = {-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < 9; ++i) CHECK(mesh.nodes[static_cast<std::size_t>(i)] == expect[i]);
  CHECK(mesh.interface_index == 4);

  const InterfaceMesh fine = build_mesh(64, 0.0);
  CHECK(fine.node_count() == 129);
  CHECK(fine.nodes[64] == 0.0);
  CHECK(fine.interface_index == 64);

  CHECK_THROWS_AS(build_mesh(3, 0.0), InvalidMeshError);
  CHECK_THROWS_AS(build_mesh(8, -0.1), InvalidMeshError);
  CHECK_THROWS_AS(build_mesh(8, 1.5), InvalidMeshError);
}

TEST_CASE("graded mesh is mirror symmetric with the advertised size ratio") {
  const int n = 9;  // odd count makes the per-side extremes hit the exact ratio
  const double grading = 0.5;
  const InterfaceMesh mesh = build_mesh(n, grading);
  REQUIRE(mesh.node_count() == 2 * n + 1);
  CHECK(mesh.nodes[static_cast<std::size_t>(n)] == 0.0);
  for (int i = 0; i <= n; ++i)
    CHECK(mesh.nodes[static_cast<std::size_t>(n - i)] ==
          -mesh.nodes[static_cast<std::size_t>(n + i)]);

  double hmin = 1e300, hmax = 0.0;
  for (std::size_t e = static_cast<std::size_t>(n); e < mesh.element_count(); ++e) {
    hmin = std::min(hmin, mesh.element_size(e));
    hmax = std::max(hmax, mesh.element_size(e));
  }
  const double ratio = std::pow(10.0, 4.0 * grading);
  CHECK(hmax / hmin == doctest::Approx(ratio).epsilon(1e-12));

  // monotone clustering toward the interface and the wall
  CHECK(mesh.element_size(static_cast<std::size_t>(n)) <
        mesh.element_size(static_cast<std::size_t>(n) + n / 2));
  CHECK(mesh.element_size(mesh.element_count() - 1) <
        mesh.element_size(static_cast<std::size_t>(n) + n / 2));
}

TEST_CASE("element lookup and interface ties") {
  const InterfaceMesh mesh = build_mesh(4, 0.0);
  CHECK(mesh.element_of(-1.0) == 0);
  CHECK(mesh.element_of(1.0) == 7);
  CHECK(mesh.element_of(0.1) == 4);
  CHECK(mesh.element_of(0.0) == 4);               // right element by default
  CHECK(mesh.element_of(0.0, true) == 3);         // left element on request
  CHECK(mesh.element_of(-0.75, true) == 0);
  CHECK_THROWS_AS(mesh.element_of(1.5), PreconditionError);
  CHECK_THROWS_AS(mesh.element_of(-1.0 - 1e-12), PreconditionError);
  CHECK(mesh.element_is_upper(4));
  CHECK_FALSE(mesh.element_is_upper(3));
}

TEST_CASE("hermite shape functions carry nodal values and slopes") {
  const double h = 0.7;
  double v[4], d[4];
  detail::hermite_shape(0.0, h, 0, v);
  detail::hermite_shape(0.0, h, 1, d);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 0.0);
  CHECK(v[2] == 0.0);
  CHECK(v[3] == 0.0);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 1.0);
  CHECK(d[2] == 0.0);
  CHECK(d[3] == 0.0);
  detail::hermite_shape(1.0, h, 0, v);
  detail::hermite_shape(1.0, h, 1, d);
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 0.0);
  CHECK(v[2] == 1.0);
  CHECK(v[3] == 0.0);
  CHECK(d[3] == doctest::Approx(1.0).epsilon(1e-14));

  // value shapes partition unity; slope shapes reproduce x - x_left
  detail::hermite_shape(0.37, h, 0, v);
  CHECK(v[0] + v[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(v[1] + h * v[2] + v[3] == doctest::Approx(0.37 * h).epsilon(1e-14));
}

TEST_CASE("hermite space dof layout") {
  const HermiteSpace space(build_mesh(8, 0.0));
  CHECK(space.dof_count() == 2 * (17 - 2));
  CHECK(space.value_dof(0) == -1);
  CHECK(space.deriv_dof(0) == -1);
  CHECK(space.value_dof(16) == -1);
  CHECK(space.deriv_dof(16) == -1);
  CHECK(space.value_dof(8) >= 0);
  CHECK(space.interface_value_dof() == space.value_dof(8));
  CHECK(space.interface_deriv_dof() == space.deriv_dof(8));
  CHECK(space.interface_value_dof() != space.interface_deriv_dof());
}

TEST_CASE("hermite interpolation is nodally exact and converges") {
  const HermiteSpace coarse(build_mesh(4, 0.0));
  const HermiteSpace fine(build_mesh(8, 0.0));
  const Vector uc = coarse.interpolate(quartic, quartic_d);
  const Vector uf = fine.interpolate(quartic, quartic_d);

  for (std::size_t i = 1; i + 1 < coarse.mesh().node_count(); ++i) {
    const double x = coarse.mesh().nodes[i];
    CHECK(coarse.eval(uc, x) == doctest::Approx(quartic(x)).epsilon(1e-14));
    CHECK(coarse.eval(uc, x, 1) == doctest::Approx(quartic_d(x)).epsilon(1e-14));
  }
  CHECK(coarse.eval(uc, -1.0) == 0.0);
  CHECK(coarse.eval(uc, 1.0) == 0.0);
  CHECK(coarse.eval(uc, 1.0, 1) == 0.0);

  double ec = 0.0, ef = 0.0;
  for (double x = -0.93; x < 1.0; x += 0.157) {
    ec = std::max(ec, std::abs(coarse.eval(uc, x) - quartic(x)));
    ef = std::max(ef, std::abs(fine.eval(uf, x) - quartic(x)));
  }
  CHECK(ec < 1e-3);
  CHECK(ec / ef > 8.0);  // quartic interpolation error drops like h^4
}

TEST_CASE("hermite derivatives are internally consistent") {
  const HermiteSpace space(build_mesh(6, 0.3));
  const Vector u = space.interpolate([](double x) { return std::sin(2.0 * x) * quartic(x); },
                                     [](double x) {
                                       return 2.0 * std::cos(2.0 * x) * quartic(x) +
                                              std::sin(2.0 * x) * quartic_d(x);
                                     });
  const double delta = 1e-6;
  for (double x : {-0.81, -0.33, 0.211, 0.67}) {
    const double fd1 = (space.eval(u, x + delta) - space.eval(u, x - delta)) / (2.0 * delta);
    CHECK(space.eval(u, x, 1) == doctest::Approx(fd1).epsilon(1e-7));
    const double fd2 =
        (space.eval(u, x + delta, 1) - space.eval(u, x - delta, 1)) / (2.0 * delta);
    CHECK(space.eval(u, x, 2) == doctest::Approx(fd2).epsilon(1e-6));
  }
  // third derivative is constant per element for a cubic field
  const double x0 = 0.5 * (space.mesh().nodes[9] + space.mesh().nodes[10]);
  CHECK(space.eval(u, x0, 3) ==
        doctest::Approx(space.eval(u, x0 + 1e-4, 3)).epsilon(1e-10));

  CHECK_THROWS_AS(space.eval(u, 0.5, 4), PreconditionError);
  CHECK_THROWS_AS(space.eval(u, 1.5), PreconditionError);
}

TEST_CASE("linear space evaluates the tent exactly") {
  const InterfaceMesh mesh = build_mesh(5, 0.4);
  const LinearSpace space(mesh);
  CHECK(space.dof_count() == static_cast<int>(mesh.node_count()) - 2);
  CHECK(space.dof(0) == -1);
  CHECK(space.dof(mesh.node_count() - 1) == -1);
  CHECK(space.interface_dof() == space.dof(mesh.interface_index));

  Vector tent = Vector::Zero(space.dof_count());
  for (std::size_t i = 1; i + 1 < mesh.node_count(); ++i)
    tent[space.dof(i)] = 1.0 - std::abs(mesh.nodes[i]);
  for (double x : {-0.77, -0.2, 0.0, 0.31, 0.9})
    CHECK(space.eval(tent, x) == doctest::Approx(1.0 - std::abs(x)).epsilon(1e-14));
  CHECK(space.eval(tent, 0.0, 1, Side::Minus) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(space.eval(tent, 0.0, 1, Side::Plus) == doctest::Approx(-1.0).epsilon(1e-13));
}
