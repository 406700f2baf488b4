// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rbsweep/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include "rbsweep/errors.hpp"

namespace rbsweep
{

namespace
{

constexpr double converged_tol = 1e-12;
constexpr double accept_tol = 1e-10;

// Q-orthonormalizes the columns of Y in place by modified Gram-Schmidt with a second
// pass. Columns that collapse are replaced by random directions.
void q_orthonormalize(Eigen::MatrixXd &Y, const SparseMatrix &Q, std::mt19937_64 &rng)
{
  std::normal_distribution<double> normal;
  Eigen::MatrixXd QY(Y.rows(), Y.cols());
  for (Eigen::Index j = 0; j < Y.cols(); j++)
  {
    for (int attempt = 0;; attempt++)
    {
      Eigen::VectorXd y = Y.col(j);
      const double initial = std::sqrt(y.dot(Q * y));
      for (int pass = 0; pass < 2; pass++)
      {
        for (Eigen::Index k = 0; k < j; k++)
        {
          y -= QY.col(k).dot(y) * Y.col(k);
        }
      }
      Eigen::VectorXd Qy = Q * y;
      const double norm = std::sqrt(std::max(0.0, y.dot(Qy)));
      if (norm > 1e-10 * initial && norm > 0.0)
      {
        Y.col(j) = y / norm;
        QY.col(j) = Qy / norm;
        break;
      }
      if (attempt > 10)
      {
        throw EigensolverFailure("subspace basis collapsed");
      }
      for (Eigen::Index i = 0; i < Y.rows(); i++)
      {
        Y(i, j) = normal(rng);
      }
    }
  }
}

double one_norm(const SparseMatrix &A)
{
  double best = 0.0;
  for (Eigen::Index j = 0; j < A.outerSize(); j++)
  {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(A, j); it; ++it)
    {
      col += std::abs(it.value());
    }
    best = std::max(best, col);
  }
  return best;
}

}  // namespace

double pencil_residual(const SparseMatrix &P, const SparseMatrix &Q, double lambda,
                       const Eigen::VectorXd &v)
{
  const double denom = (one_norm(P) + std::abs(lambda) * one_norm(Q)) * v.norm();
  return denom > 0.0 ? (P * v - lambda * (Q * v)).norm() / denom : 0.0;
}

Eigenpairs dense_eigenpairs(const SparseMatrix &P, const SparseMatrix &Q)
{
  Eigen::MatrixXd Pd(P), Qd(Q);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(Pd, Qd);
  if (solver.info() != Eigen::Success)
  {
    throw EigensolverFailure("dense generalized eigensolve did not converge");
  }
  Eigenpairs pairs{solver.eigenvalues(), solver.eigenvectors(), 0.0};
  for (Eigen::Index k = 0; k < pairs.values.size(); k++)
  {
    pairs.worst_residual =
        std::max(pairs.worst_residual,
                 pencil_residual(P, Q, pairs.values(k), pairs.vectors.col(k)));
  }
  return pairs;
}

int count_below(const SparseMatrix &P, const SparseMatrix &Q, double shift)
{
  const double bump = 1e-13 * std::max(1.0, std::abs(shift));
  for (int attempt = 0; attempt < 8; attempt++)
  {
    SparseMatrix S = P - (shift + attempt * bump) * Q;
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(S);
    if (ldlt.info() != Eigen::Success)
    {
      continue;
    }
    const Eigen::VectorXd d = ldlt.vectorD();
    if ((d.array() == 0.0).any() || !d.allFinite())
    {
      continue;
    }
    return static_cast<int>((d.array() < 0.0).count());
  }
  throw EigensolverFailure("inertia count failed near shift " + std::to_string(shift));
}

Eigenpairs nearest_eigenpairs(const SparseMatrix &P, const SparseMatrix &Q, double sigma,
                              int count, int max_iters)
{
  const Eigen::Index n = P.rows();
  if (count <= 0)
  {
    return {Eigen::VectorXd(0), Eigen::MatrixXd(n, 0), 0.0};
  }
  const Eigen::Index p = std::min<Eigen::Index>(n, std::max(count + 8, 2 * count));

  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  for (int attempt = 0;; attempt++)
  {
    SparseMatrix S = P - sigma * Q;
    S.makeCompressed();
    lu.compute(S);
    if (lu.info() == Eigen::Success)
    {
      break;
    }
    if (attempt > 4)
    {
      throw EigensolverFailure("shift-invert factorization failed");
    }
    sigma += 1e-8 * std::max(1.0, std::abs(sigma));
  }

  std::mt19937_64 rng(0xe16e);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd V(n, p);
  for (Eigen::Index j = 0; j < p; j++)
  {
    for (Eigen::Index i = 0; i < n; i++)
    {
      V(i, j) = normal(rng);
    }
  }
  q_orthonormalize(V, Q, rng);

  Eigenpairs best;
  double worst = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iters; it++)
  {
    Eigen::MatrixXd QV = Q * V;
    for (Eigen::Index j = 0; j < p; j++)
    {
      V.col(j) = lu.solve(Eigen::VectorXd(QV.col(j)));
    }
    q_orthonormalize(V, Q, rng);

    // Rayleigh-Ritz in the Q-orthonormal basis.
    Eigen::MatrixXd H = V.transpose() * (P * V);
    H = 0.5 * (H + H.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(H);
    V = V * ritz.eigenvectors();
    const Eigen::VectorXd theta = ritz.eigenvalues();

    std::vector<Eigen::Index> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b)
                     { return std::abs(theta(a) - sigma) < std::abs(theta(b) - sigma); });
    order.resize(count);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return theta(a) < theta(b); });

    Eigenpairs pairs{Eigen::VectorXd(count), Eigen::MatrixXd(n, count), 0.0};
    for (int k = 0; k < count; k++)
    {
      pairs.values(k) = theta(order[k]);
      pairs.vectors.col(k) = V.col(order[k]);
      pairs.worst_residual = std::max(
          pairs.worst_residual, pencil_residual(P, Q, pairs.values(k), pairs.vectors.col(k)));
    }
    if (pairs.worst_residual < worst)
    {
      worst = pairs.worst_residual;
      best = pairs;
    }
    if (pairs.worst_residual <= converged_tol)
    {
      return pairs;
    }
  }
  if (worst <= accept_tol)
  {
    return best;
  }
  throw EigensolverFailure("subspace iteration did not converge; worst residual " +
                           std::to_string(worst));
}

}  // namespace rbsweep
