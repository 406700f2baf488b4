// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RBSWEEP_EIGENSOLVER_HPP
#define RBSWEEP_EIGENSOLVER_HPP

#include "rbsweep/fom.hpp"

namespace rbsweep
{

// Eigenpairs of a symmetric-definite pencil P v = λ Q v with Q-orthonormal vectors.
struct Eigenpairs
{
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  double worst_residual = 0.0;
};

// ‖P v - λ Q v‖ / ((‖P‖₁ + |λ| ‖Q‖₁) ‖v‖).
double pencil_residual(const SparseMatrix &P, const SparseMatrix &Q, double lambda,
                       const Eigen::VectorXd &v);

// Full spectrum by a dense solve, ascending.
Eigenpairs dense_eigenpairs(const SparseMatrix &P, const SparseMatrix &Q);

// Number of pencil eigenvalues below shift, from the inertia of an LDLᵀ factorization of
// P - shift Q. The shift is nudged slightly if it lands on a zero pivot.
int count_below(const SparseMatrix &P, const SparseMatrix &Q, double shift);

// The count eigenpairs closest to sigma, by shift-invert subspace iteration with
// Rayleigh-Ritz. Sorted ascending by eigenvalue. Throws EigensolverFailure when the
// worst relative residual stays above 1e-10.
Eigenpairs nearest_eigenpairs(const SparseMatrix &P, const SparseMatrix &Q, double sigma,
                              int count, int max_iters = 2000);

}  // namespace rbsweep

#endif  // RBSWEEP_EIGENSOLVER_HPP
