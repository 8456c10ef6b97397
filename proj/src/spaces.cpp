// SPDX-License-Identifier: Apache-2.0

#include "mhdrt/spaces.hpp"

namespace mhdrt {

namespace detail {

void hermite_shape(double t, double h, int deriv, double out[4]) {
  switch (deriv) {
    case 0:
      out[0] = 1.0 + t * t * (2.0 * t - 3.0);
      out[1] = h * t * (1.0 - t) * (1.0 - t);
      out[2] = t * t * (3.0 - 2.0 * t);
      out[3] = h * t * t * (t - 1.0);
      return;
    case 1:
      out[0] = 6.0 * t * (t - 1.0) / h;
      out[1] = 1.0 + t * (3.0 * t - 4.0);
      out[2] = 6.0 * t * (1.0 - t) / h;
      out[3] = t * (3.0 * t - 2.0);
      return;
    case 2:
      out[0] = (12.0 * t - 6.0) / (h * h);
      out[1] = (6.0 * t - 4.0) / h;
      out[2] = (6.0 - 12.0 * t) / (h * h);
      out[3] = (6.0 * t - 2.0) / h;
      return;
    case 3:
      out[0] = 12.0 / (h * h * h);
      out[1] = 6.0 / (h * h);
      out[2] = -12.0 / (h * h * h);
      out[3] = 6.0 / (h * h);
      return;
    default:
      throw PreconditionError("derivative order must be 0..3");
  }
}

}  // namespace detail

HermiteSpace::HermiteSpace(InterfaceMesh mesh) : mesh_(std::move(mesh)) {
  dof_count_ = 2 * (static_cast<int>(mesh_.node_count()) - 2);
}

int HermiteSpace::value_dof(std::size_t node) const {
  if (node == 0 || node + 1 == mesh_.node_count()) return -1;
  return 2 * (static_cast<int>(node) - 1);
}

int HermiteSpace::deriv_dof(std::size_t node) const {
  const int vd = value_dof(node);
  return vd < 0 ? -1 : vd + 1;
}

double HermiteSpace::eval(const Vector& u, double x, int deriv, Side side) const {
  const std::size_t e = mesh_.element_of(x, side == Side::Minus);
  const double h = mesh_.element_size(e);
  const double t = (x - mesh_.nodes[e]) / h;
  double shape[4];
  detail::hermite_shape(t, h, deriv, shape);
  const int dofs[4] = {value_dof(e), deriv_dof(e), value_dof(e + 1), deriv_dof(e + 1)};
  double val = 0.0;
  for (int k = 0; k < 4; ++k)
    if (dofs[k] >= 0) val += shape[k] * u[dofs[k]];
  return val;
}

LinearSpace::LinearSpace(InterfaceMesh mesh) : mesh_(std::move(mesh)) {
  dof_count_ = static_cast<int>(mesh_.node_count()) - 2;
}

int LinearSpace::dof(std::size_t node) const {
  if (node == 0 || node + 1 == mesh_.node_count()) return -1;
  return static_cast<int>(node) - 1;
}

double LinearSpace::eval(const Vector& u, double x, int deriv, Side side) const {
  const std::size_t e = mesh_.element_of(x, side == Side::Minus);
  const double h = mesh_.element_size(e);
  const double t = (x - mesh_.nodes[e]) / h;
  const int dl = dof(e);
  const int dr = dof(e + 1);
  const double ul = dl >= 0 ? u[dl] : 0.0;
  const double ur = dr >= 0 ? u[dr] : 0.0;
  switch (deriv) {
    case 0: return ul * (1.0 - t) + ur * t;
    case 1: return (ur - ul) / h;
    default: return 0.0;
  }
}

}  // namespace mhdrt
