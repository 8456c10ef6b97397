// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mhdrt/spaces.hpp"

namespace mhdrt {

struct EigenPair {
  double value;
  Vector vector;  // M-normalized: x^T M x = 1
};

// Dense solver for the symmetric-definite pencil K x = lambda M x with M
// positive definite.  M is Cholesky-factored, the problem is transformed to
// a standard symmetric one, solved densely, and back-substituted; the
// eigenvectors come out M-orthonormal by construction.
class SymmetricPencil {
 public:
  SymmetricPencil(const Matrix& K, const Matrix& M);

  int size() const { return static_cast<int>(values_.size()); }
  double eigenvalue(int i) const { return values_[i]; }  // ascending order
  double smallest() const { return values_[0]; }
  double largest() const { return values_[size() - 1]; }
  Vector eigenvector(int i) const;

  // max |eigenvalue|: the operator norm of the transformed problem, used to
  // scale residuals.
  double operator_norm() const;

  // ||(B - lambda_i I) y_i||_2 / operator_norm with B the transformed
  // matrix: the relative residual of pair i in the M^{-1} dual norm.
  double residual(int i) const;

 private:
  Matrix L_;            // Cholesky factor of M
  Matrix transformed_;  // B = L^{-1} K L^{-T}
  Vector values_;
  Matrix vectors_;  // eigenvectors of B, columnwise
};

EigenPair smallest_eigenpair(const Matrix& K, const Matrix& M);
EigenPair largest_eigenpair(const Matrix& K, const Matrix& M);

// Polishes an eigenpair of (K, M) in place: shifted inverse iteration
// followed by an extended-precision Rayleigh quotient.  The dense solve
// carries an absolute eigenvalue error of order eps * ||L^-1 K L^-T||,
// which on graded meshes swamps eigenvalues near zero; the quotient is
// stationary at the eigenvector, so one or two polish steps push the value
// down to the rounding floor of K itself.  x must be M-normalized on entry
// and stays so.
void refine_eigenpair(const Matrix& K, const Matrix& M, double& value, Vector& x);

namespace detail {

// x^T A x accumulated in extended precision; the summands of stiff forms
// cancel down to values many orders below their own magnitude.
long double quad_form(const Matrix& A, const Vector& x);

}  // namespace detail

}  // namespace mhdrt
