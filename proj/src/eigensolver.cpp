// SPDX-License-Identifier: Apache-2.0

#include "mhdrt/eigensolver.hpp"

#include <algorithm>

namespace mhdrt {

SymmetricPencil::SymmetricPencil(const Matrix& K, const Matrix& M) {
  if (K.rows() != K.cols() || M.rows() != M.cols() || K.rows() != M.rows())
    throw PreconditionError("pencil matrices must be square and of equal size");
  Eigen::LLT<Matrix> llt(M);
  if (llt.info() != Eigen::Success)
    throw MassMatrixError("mass matrix is not positive definite");
  L_ = llt.matrixL();

  Matrix X = L_.triangularView<Eigen::Lower>().solve(K);
  transformed_ = L_.triangularView<Eigen::Lower>().solve(X.transpose());
  transformed_ = 0.5 * (transformed_ + transformed_.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> es(transformed_);
  if (es.info() != Eigen::Success)
    throw ConvergenceFailureError("dense symmetric eigensolve failed");
  values_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

Vector SymmetricPencil::eigenvector(int i) const {
  // back-transform x = L^{-T} y; x^T M x = y^T y = 1 by construction
  return L_.transpose().triangularView<Eigen::Upper>().solve(vectors_.col(i));
}

double SymmetricPencil::operator_norm() const {
  const double n = std::max(std::abs(values_[0]), std::abs(values_[size() - 1]));
  return n > 0.0 ? n : 1.0;
}

double SymmetricPencil::residual(int i) const {
  const Vector r = transformed_ * vectors_.col(i) - values_[i] * vectors_.col(i);
  return r.norm() / operator_norm();
}

EigenPair smallest_eigenpair(const Matrix& K, const Matrix& M) {
  SymmetricPencil pencil(K, M);
  return EigenPair{pencil.smallest(), pencil.eigenvector(0)};
}

namespace detail {

long double quad_form(const Matrix& A, const Vector& x) {
  const Eigen::Index n = A.rows();
  long double acc = 0.0L;
  for (Eigen::Index i = 0; i < n; ++i) {
    long double row = 0.0L;
    for (Eigen::Index j = 0; j < n; ++j)
      row += static_cast<long double>(A(i, j)) * static_cast<long double>(x[j]);
    acc += row * static_cast<long double>(x[i]);
  }
  return acc;
}

}  // namespace detail

using detail::quad_form;

void refine_eigenpair(const Matrix& K, const Matrix& M, double& value, Vector& x) {
  for (int it = 0; it < 2; ++it) {
    const Matrix shifted = K - value * M;
    Eigen::PartialPivLU<Matrix> lu(shifted);
    Vector y = lu.solve(M * x);
    const double raw = y.norm();
    // An exactly singular shift (or overflow) leaves the current pair, which
    // is then already at the attainable floor.
    if (!(raw > 0.0) || !std::isfinite(raw)) return;
    y /= raw;
    const long double m = quad_form(M, y);
    if (!(m > 0.0L) || !std::isfinite(static_cast<double>(m))) return;
    y /= std::sqrt(static_cast<double>(m));
    const long double num = quad_form(K, y);
    const long double den = quad_form(M, y);
    const double next = static_cast<double>(num / den);
    if (!std::isfinite(next)) return;
    x = y;
    value = next;
  }
}

EigenPair largest_eigenpair(const Matrix& K, const Matrix& M) {
  SymmetricPencil pencil(K, M);
  return EigenPair{pencil.largest(), pencil.eigenvector(pencil.size() - 1)};
}

}  // namespace mhdrt
