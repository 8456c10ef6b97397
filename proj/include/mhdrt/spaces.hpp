// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "mhdrt/mesh.hpp"
#include "mhdrt/types.hpp"

namespace mhdrt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Side selector for one-sided evaluation at interior nodes.  Auto takes the
// element to the right (left at x = +1); the curvature and higher
// derivatives of the conforming fields jump across element boundaries, so
// interface quantities must ask for a side explicitly.
enum class Side { Auto, Minus, Plus };

// Cubic Hermite (C^1) space on the interface mesh with clamped ends
// psi(+-1) = psi'(+-1) = 0.  Each interior node carries a value dof and a
// derivative dof; boundary dofs are eliminated.
class HermiteSpace {
 public:
  explicit HermiteSpace(InterfaceMesh mesh);

  const InterfaceMesh& mesh() const { return mesh_; }
  int dof_count() const { return dof_count_; }

  // Global dof indices for a node; -1 for the clamped boundary nodes.
  int value_dof(std::size_t node) const;
  int deriv_dof(std::size_t node) const;
  int interface_value_dof() const { return value_dof(mesh_.interface_index); }
  int interface_deriv_dof() const { return deriv_dof(mesh_.interface_index); }

  // Evaluates the field (deriv = 0) or its 1st..3rd x-derivative carried by
  // coefficient vector u at x.  Derivatives above the first are one-sided
  // at nodes; pick the side with `side`.
  double eval(const Vector& u, double x, int deriv = 0, Side side = Side::Auto) const;

  // Interpolates values/derivatives of a smooth function into the space
  // (clamped boundary dofs are dropped).
  template <typename F, typename DF>
  Vector interpolate(F&& f, DF&& df) const {
    Vector u = Vector::Zero(dof_count_);
    for (std::size_t i = 0; i < mesh_.node_count(); ++i) {
      const int vd = value_dof(i);
      if (vd < 0) continue;
      u[vd] = f(mesh_.nodes[i]);
      u[deriv_dof(i)] = df(mesh_.nodes[i]);
    }
    return u;
  }

 private:
  InterfaceMesh mesh_;
  int dof_count_;
};

// P1 (continuous piecewise-linear) space with zero boundary values, used
// for the H^1 extremal problems.  One dof per interior node.
class LinearSpace {
 public:
  explicit LinearSpace(InterfaceMesh mesh);

  const InterfaceMesh& mesh() const { return mesh_; }
  int dof_count() const { return dof_count_; }
  int dof(std::size_t node) const;
  int interface_dof() const { return dof(mesh_.interface_index); }

  double eval(const Vector& u, double x, int deriv = 0, Side side = Side::Auto) const;

 private:
  InterfaceMesh mesh_;
  int dof_count_;
};

namespace detail {

// Shape values (deriv = 0) or x-derivatives of the four cubic Hermite basis
// functions on an element of size h, at local coordinate t in [0,1].
// Ordering: value-left, slope-left, value-right, slope-right.
void hermite_shape(double t, double h, int deriv, double out[4]);

}  // namespace detail

}  // namespace mhdrt
