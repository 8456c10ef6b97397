// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

namespace mhdrt {

// One-dimensional mesh of [-1,1] with a node pinned at x = 0, where the
// material coefficients jump.  Every element lies entirely in one fluid, so
// piecewise-constant coefficients are exact element-wise and no quadrature
// smearing of the interface can occur.
struct InterfaceMesh {
  std::vector<double> nodes;        // strictly increasing, front()=-1, back()=+1
  std::size_t interface_index = 0;  // nodes[interface_index] == 0.0 exactly

  std::size_t node_count() const { return nodes.size(); }
  std::size_t element_count() const { return nodes.size() - 1; }
  double element_size(std::size_t e) const { return nodes[e + 1] - nodes[e]; }

  // true when element e lies in the upper fluid (x > 0)
  bool element_is_upper(std::size_t e) const { return e >= interface_index; }

  // Element containing x in [-1,1].  At an interior node the tie resolves
  // to the left element when prefer_left is set, else to the right one.
  std::size_t element_of(double x, bool prefer_left = false) const;
};

// Builds a mesh with n_per_side elements on each side of the interface
// (2*n_per_side elements total).  grading = 0 gives uniform elements;
// grading in (0,1] grades each side geometrically so elements cluster
// toward x = 0 and toward the walls, with a largest/smallest size ratio of
// 10^(4*grading) per side.  The mesh is exactly symmetric under x -> -x.
InterfaceMesh build_mesh(int n_per_side, double grading = 0.0);

}  // namespace mhdrt
