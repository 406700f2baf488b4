// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rbsweep/reduction.hpp"

#include <cmath>
#include "rbsweep/errors.hpp"

namespace rbsweep
{

namespace
{

constexpr double singular_rcond = 1e-14;

}  // namespace

ReducedSpace::ReducedSpace(const FullOrderModel &model, SpaceRole role)
  : model_(&model), role_(role), V_(model.size(), 0), XV_(model.size(), 0), Kr_(0, 0),
    Mr_(0, 0), br_(0)
{
}

ComplexVector ReducedSpace::orthogonalize(ComplexVector w) const
{
  for (int pass = 0; pass < 2; pass++)
  {
    for (Eigen::Index k = 0; k < V_.cols(); k++)
    {
      // (w, q_k)_X = q_kᴴ X w.
      w -= XV_.col(k).dot(w) * V_.col(k);
    }
  }
  return w;
}

EnrichResult ReducedSpace::enrich(const ComplexVector &v, double drop_tol)
{
  EnrichResult result;
  const double norm = x_norm(*model_, v);
  if (!(norm > 0.0))
  {
    return result;
  }
  ComplexVector w = orthogonalize(v);
  ComplexVector Xw = model_->X() * w;
  const double rem = std::sqrt(std::max(0.0, w.dot(Xw).real()));
  result.remainder = rem / norm;
  if (!(rem > drop_tol * norm))
  {
    return result;
  }
  w /= rem;
  Xw /= rem;

  const Eigen::Index m = V_.cols();
  ComplexVector Kw = model_->K() * w;
  ComplexVector Mw = model_->M() * w;
  V_.conservativeResize(Eigen::NoChange, m + 1);
  XV_.conservativeResize(Eigen::NoChange, m + 1);
  V_.col(m) = w;
  XV_.col(m) = Xw;

  Kr_.conservativeResize(m + 1, m + 1);
  Mr_.conservativeResize(m + 1, m + 1);
  br_.conservativeResize(m + 1);
  for (Eigen::Index k = 0; k <= m; k++)
  {
    Kr_(k, m) = V_.col(k).dot(Kw);
    Mr_(k, m) = V_.col(k).dot(Mw);
    Kr_(m, k) = std::conj(Kr_(k, m));
    Mr_(m, k) = std::conj(Mr_(k, m));
  }
  Kr_(m, m) = Kr_(m, m).real();
  Mr_(m, m) = Mr_(m, m).real();
  br_(m) = w.dot(model_->b());
  result.added = true;
  return result;
}

double ReducedSpace::new_information_norm(const ComplexVector &v) const
{
  const double norm = x_norm(*model_, v);
  if (!(norm > 0.0))
  {
    throw ZeroVector("new-information norm of a zero vector");
  }
  if (V_.cols() == 0)
  {
    return 1.0;
  }
  ComplexVector e = orthogonalize(v / norm);
  return std::min(1.0, x_norm(*model_, e));
}

ReducedSpace ReducedSpace::relabeled(SpaceRole role) const
{
  ReducedSpace copy = *this;
  copy.role_ = role;
  return copy;
}

ComplexVector solve_reduced(const ComplexMatrix &A, const ComplexVector &rhs, double omega)
{
  if (A.rows() == 0)
  {
    throw ReducedSingular("empty reduced space");
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(A);
  const double rcond = lu.rcond();
  if (!(rcond > singular_rcond))
  {
    throw ReducedSingular("reduced pencil singular at ω = " + std::to_string(omega) +
                          " (rcond " + std::to_string(rcond) + ")");
  }
  ComplexVector c = lu.solve(rhs);
  if (!c.allFinite())
  {
    throw ReducedSingular("non-finite reduced solution at ω = " + std::to_string(omega));
  }
  return c;
}

RomSolution solve_rom(const ReducedSpace &space, double omega)
{
  ComplexMatrix A = space.reduced_K() - (omega * omega) * space.reduced_M();
  return {solve_reduced(A, (I1 * omega) * space.reduced_b(), omega), omega};
}

ComplexVector lift(const ReducedSpace &space, const RomSolution &sol)
{
  return space.lift(sol.coeffs);
}

double new_information_norm(const ReducedSpace &space, const ComplexVector &v)
{
  return space.new_information_norm(v);
}

ReducedSpace compose_residual_space(const ReducedSpace &primal,
                                    const std::vector<ComplexVector> &extra)
{
  ReducedSpace space = primal.relabeled(SpaceRole::residual);
  for (const auto &v : extra)
  {
    space.enrich(v);
  }
  return space;
}

ReducedSpace space_from_basis(const FullOrderModel &model, const ComplexMatrix &basis,
                              SpaceRole role)
{
  if (basis.rows() != model.size())
  {
    throw DimensionMismatch("basis has " + std::to_string(basis.rows()) +
                            " rows, model has dimension " + std::to_string(model.size()));
  }
  ReducedSpace space(model, role);
  for (Eigen::Index k = 0; k < basis.cols(); k++)
  {
    space.enrich(basis.col(k));
  }
  return space;
}

}  // namespace rbsweep
