// SPDX-License-Identifier: Apache-2.0

#include "mhdrt/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "mhdrt/types.hpp"

namespace mhdrt {

std::size_t InterfaceMesh::element_of(double x, bool prefer_left) const {
  if (x < nodes.front() || x > nodes.back())
    throw PreconditionError("evaluation point outside the slab");
  // first node strictly greater than x
  auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  std::size_t e = (it == nodes.end()) ? element_count() - 1
                                      : static_cast<std::size_t>(it - nodes.begin()) - 1;
  if (prefer_left && e > 0 && nodes[e] == x) --e;
  return e;
}

namespace {

// Element-size profile on a unit side: geometric growth from both ends with
// per-side max/min ratio 10^(4*grading).  Returned fractions sum to 1.
std::vector<double> side_fractions(int n, double grading) {
  std::vector<double> w(static_cast<std::size_t>(n));
  const double ratio = std::pow(10.0, 4.0 * grading);
  const double m = (n - 1) / 2.0;
  const double q = (n > 1) ? std::pow(ratio, 1.0 / m) : 1.0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const int k = std::min(i, n - 1 - i);
    w[static_cast<std::size_t>(i)] = std::pow(q, static_cast<double>(k));
    sum += w[static_cast<std::size_t>(i)];
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace

InterfaceMesh build_mesh(int n_per_side, double grading) {
  if (n_per_side < 4)
    throw InvalidMeshError("mesh needs at least 4 elements per side");
  if (!(grading >= 0.0) || !(grading <= 1.0))
    throw InvalidMeshError("grading must lie in [0,1]");

  const std::size_t n = static_cast<std::size_t>(n_per_side);
  const std::vector<double> w = side_fractions(n_per_side, grading);

  // Upper side first: nodes 0 = x_0 < x_1 < ... < x_n = 1, clustered at
  // both ends.  The lower side is the exact mirror image, so the full mesh
  // is bitwise symmetric under reflection.
  std::vector<double> upper(n + 1);
  upper[0] = 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    acc += w[i];
    upper[i + 1] = acc;
  }
  upper[n] = 1.0;

  InterfaceMesh mesh;
  mesh.nodes.resize(2 * n + 1);
  mesh.interface_index = n;
  for (std::size_t i = 0; i <= n; ++i) {
    mesh.nodes[n + i] = upper[i];
    mesh.nodes[n - i] = -upper[i];
  }
  mesh.nodes[n] = 0.0;  // exact, not -0.0
  return mesh;
}

}  // namespace mhdrt
