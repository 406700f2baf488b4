// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RBSWEEP_SPECTRAL_HPP
#define RBSWEEP_SPECTRAL_HPP

#include <vector>
#include "rbsweep/fom.hpp"

namespace rbsweep
{

struct SpectralOptions
{
  // Dense generalized eigensolve up to this size, shift-invert iteration above.
  Eigen::Index dense_limit = 2000;
};

// In-band eigenpairs of the pencil with X-orthonormal modes, plus the statics field.
struct ModalDecomposition
{
  std::vector<double> omegas;  // ascending, ω_n = sqrt(λ_n)
  Eigen::MatrixXd modes;       // n x count, modesᵀ X modes = I
  ComplexVector f0;            // empty until compute_statics fills it
  int count() const { return static_cast<int>(omegas.size()); }
};

struct Statics
{
  ComplexVector f0;
  int kernel_dim = 0;
  bool degenerate = false;  // F₀ vanished
};

// Pencil eigenvalues within [ω_min², ω_max²], widened by relative 1e-9 on both ends.
ModalDecomposition compute_inband_modes(const FullOrderModel &model,
                                        const FrequencyBand &band,
                                        const SpectralOptions &opts = {});

// M-orthonormal basis of ker(K), detected as pencil eigenvalues below 1e-10 relative to
// the spectral scale.
Eigen::MatrixXd kernel_basis(const FullOrderModel &model, const SpectralOptions &opts = {});

// F₀ = Z (ZᵀMZ)⁻¹ Zᵀ b when K has a kernel Z, X⁻¹ b otherwise, then X-orthogonalized
// against the in-band modes.
Statics compute_statics(const FullOrderModel &model, const ModalDecomposition &decomp,
                        const SpectralOptions &opts = {});

// A_n = e_nᵀ b for the X-orthonormal in-band modes.
ComplexVector coupling_coefficients(const ModalDecomposition &decomp,
                                    const FullOrderModel &model);

enum class ModeBudget
{
  all,
  in_band
};

// Ingredients of the modal frequency expansion
//   x(ω) = F₀ / (iω) + iω Σ_n (λ_n + 1) / (λ_n - ω²) A_n e_n,
// with X-orthonormal e_n, A_n = e_nᵀ b, and F₀ the kernel component of the excitation
// (zero when K is nonsingular). The factor (λ_n + 1) / λ_n relative to the textbook
// 1 / (1 - ω²/λ_n) comes from normalizing the modes in X rather than in K.
struct ModalExpansion
{
  Eigen::VectorXd lambdas;
  Eigen::MatrixXd modes;
  ComplexVector coefficients;
  ComplexVector statics;
};

ModalExpansion modal_expansion(const FullOrderModel &model, ModeBudget budget,
                               const SpectralOptions &opts = {});

// Throws AtResonance when ω² matches a retained eigenvalue to relative 1e-12.
ComplexVector modal_solve(const ModalExpansion &expansion, double omega);
ComplexVector modal_solve(const FullOrderModel &model, double omega, ModeBudget budget);

}  // namespace rbsweep

#endif  // RBSWEEP_SPECTRAL_HPP
