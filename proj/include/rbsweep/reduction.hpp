// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RBSWEEP_REDUCTION_HPP
#define RBSWEEP_REDUCTION_HPP

#include <vector>
#include "rbsweep/fom.hpp"

namespace rbsweep
{

enum class SpaceRole
{
  primal,
  residual
};

struct EnrichResult
{
  bool added = false;
  // X-norm of the orthogonalized remainder relative to the X-norm of the input.
  double remainder = 0.0;
};

struct RomSolution
{
  ComplexVector coeffs;
  double omega = 0.0;
};

//
// X-orthonormal reduced basis V with the Galerkin operators VᴴKV, VᴴMV and Vᴴb kept in
// sync on every enrichment. Holds a non-owning pointer to its model, which must outlive
// the space.
//
class ReducedSpace
{
private:
  const FullOrderModel *model_;
  SpaceRole role_;
  ComplexMatrix V_, XV_;
  ComplexMatrix Kr_, Mr_;
  ComplexVector br_;

  // Two passes of modified Gram-Schmidt in the X-inner product.
  ComplexVector orthogonalize(ComplexVector w) const;

public:
  explicit ReducedSpace(const FullOrderModel &model, SpaceRole role = SpaceRole::primal);

  // Orthonormalizes v against the basis and appends it unless the remainder is at most
  // drop_tol times x_norm(v).
  EnrichResult enrich(const ComplexVector &v, double drop_tol = 1e-10);

  // X-norm of the component of v / x_norm(v) orthogonal to the span; 1 for an empty
  // space. Throws ZeroVector when x_norm(v) = 0.
  double new_information_norm(const ComplexVector &v) const;

  ComplexVector lift(const ComplexVector &coeffs) const { return V_ * coeffs; }

  const FullOrderModel &model() const { return *model_; }
  SpaceRole role() const { return role_; }
  Eigen::Index dim() const { return V_.cols(); }
  const ComplexMatrix &basis() const { return V_; }
  const ComplexMatrix &x_basis() const { return XV_; }
  const ComplexMatrix &reduced_K() const { return Kr_; }
  const ComplexMatrix &reduced_M() const { return Mr_; }
  const ComplexVector &reduced_b() const { return br_; }

  ReducedSpace relabeled(SpaceRole role) const;
};

// Solves (Vᴴ K V - ω² Vᴴ M V) c = iω Vᴴ b. Throws ReducedSingular when the reduced
// pencil is numerically singular at ω.
RomSolution solve_rom(const ReducedSpace &space, double omega);

// Dense LU solve of a small system with the same singularity policy.
ComplexVector solve_reduced(const ComplexMatrix &A, const ComplexVector &rhs, double omega);

ComplexVector lift(const ReducedSpace &space, const RomSolution &sol);

double new_information_norm(const ReducedSpace &space, const ComplexVector &v);

// Residual-labeled copy of primal enriched with each extra vector in order.
ReducedSpace compose_residual_space(const ReducedSpace &primal,
                                    const std::vector<ComplexVector> &extra);

// Builds a space from stored basis columns, re-orthonormalizing them in order.
ReducedSpace space_from_basis(const FullOrderModel &model, const ComplexMatrix &basis,
                              SpaceRole role = SpaceRole::primal);

}  // namespace rbsweep

#endif  // RBSWEEP_REDUCTION_HPP
