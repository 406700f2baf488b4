// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rbsweep/spectral.hpp"

#include <cmath>
#include "rbsweep/eigensolver.hpp"
#include "rbsweep/errors.hpp"

namespace rbsweep
{

namespace
{

constexpr double boundary_tol = 1e-9;
constexpr double kernel_tol = 1e-10;
constexpr double mode_residual_tol = 1e-10;
constexpr double overlap_tol = 1e-12;

// Rough upper estimate of the largest pencil eigenvalue, used to make the kernel
// threshold scale-aware.
double spectral_scale(const FullOrderModel &model)
{
  double scale = 1.0;
  for (Eigen::Index i = 0; i < model.size(); i++)
  {
    scale = std::max(scale, model.K().coeff(i, i) / model.M().coeff(i, i));
  }
  return scale;
}

ComplexVector kernel_component(const FullOrderModel &model, const Eigen::MatrixXd &Z)
{
  if (Z.cols() == 0)
  {
    return ComplexVector::Zero(model.size());
  }
  Eigen::MatrixXd G = Z.transpose() * (model.M() * Z);
  ComplexVector rhs = Z.transpose().cast<std::complex<double>>() * model.b();
  ComplexVector y = G.cast<std::complex<double>>().ldlt().solve(rhs);
  return Z.cast<std::complex<double>>() * y;
}

}  // namespace

ModalDecomposition compute_inband_modes(const FullOrderModel &model,
                                        const FrequencyBand &band,
                                        const SpectralOptions &opts)
{
  const double lo = band.omega_min() * band.omega_min() * (1.0 - boundary_tol);
  const double hi = band.omega_max() * band.omega_max() * (1.0 + boundary_tol);

  Eigenpairs pairs;
  if (model.size() <= opts.dense_limit)
  {
    Eigenpairs all = dense_eigenpairs(model.K(), model.M());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < all.values.size(); k++)
    {
      if (all.values(k) >= lo && all.values(k) <= hi)
      {
        keep.push_back(k);
      }
    }
    pairs.values.resize(keep.size());
    pairs.vectors.resize(model.size(), keep.size());
    for (std::size_t k = 0; k < keep.size(); k++)
    {
      pairs.values(k) = all.values(keep[k]);
      pairs.vectors.col(k) = all.vectors.col(keep[k]);
      pairs.worst_residual = std::max(
          pairs.worst_residual,
          pencil_residual(model.K(), model.M(), pairs.values(k), pairs.vectors.col(k)));
    }
  }
  else
  {
    const int count = count_below(model.K(), model.M(), hi) -
                      count_below(model.K(), model.M(), lo);
    pairs = nearest_eigenpairs(model.K(), model.M(), 0.5 * (lo + hi), count);
    for (Eigen::Index k = 0; k < pairs.values.size(); k++)
    {
      if (pairs.values(k) < lo || pairs.values(k) > hi)
      {
        throw EigensolverFailure("eigenvalue " + std::to_string(pairs.values(k)) +
                                 " found outside the band after inertia count");
      }
    }
  }
  if (pairs.worst_residual > mode_residual_tol)
  {
    throw EigensolverFailure("in-band eigenpairs not converged; worst residual " +
                             std::to_string(pairs.worst_residual));
  }

  ModalDecomposition decomp;
  decomp.modes.resize(model.size(), pairs.values.size());
  for (Eigen::Index k = 0; k < pairs.values.size(); k++)
  {
    // eᵀMe = 1 and Ke = λMe give eᵀXe = λ + 1.
    decomp.omegas.push_back(std::sqrt(pairs.values(k)));
    decomp.modes.col(k) = pairs.vectors.col(k) / std::sqrt(pairs.values(k) + 1.0);
  }
  return decomp;
}

Eigen::MatrixXd kernel_basis(const FullOrderModel &model, const SpectralOptions &opts)
{
  const double threshold = kernel_tol * spectral_scale(model);
  const int count = count_below(model.K(), model.M(), threshold);
  if (count == 0)
  {
    return Eigen::MatrixXd(model.size(), 0);
  }
  Eigenpairs pairs = (model.size() <= opts.dense_limit)
                         ? dense_eigenpairs(model.K(), model.M())
                         : nearest_eigenpairs(model.K(), model.M(), -1.0, count);
  return pairs.vectors.leftCols(count);
}

Statics compute_statics(const FullOrderModel &model, const ModalDecomposition &decomp,
                        const SpectralOptions &opts)
{
  Statics statics;
  Eigen::MatrixXd Z = kernel_basis(model, opts);
  statics.kernel_dim = static_cast<int>(Z.cols());
  ComplexVector f0 = Z.cols() > 0 ? kernel_component(model, Z) : model.solve_x(model.b());

  const double initial = x_norm(model, f0);
  for (int pass = 0; pass < 2; pass++)
  {
    for (int k = 0; k < decomp.count(); k++)
    {
      ComplexVector e = decomp.modes.col(k).cast<std::complex<double>>();
      const std::complex<double> c = x_inner(model, f0, e);
      if (std::abs(c) > overlap_tol * initial)
      {
        f0 -= c * e;
      }
    }
  }
  const double remaining = x_norm(model, f0);
  if (initial == 0.0 || !(remaining > overlap_tol * initial))
  {
    statics.degenerate = true;
    f0.setZero();
  }
  statics.f0 = std::move(f0);
  return statics;
}

ComplexVector coupling_coefficients(const ModalDecomposition &decomp,
                                    const FullOrderModel &model)
{
  return decomp.modes.transpose().cast<std::complex<double>>() * model.b();
}

ModalExpansion modal_expansion(const FullOrderModel &model, ModeBudget budget,
                               const SpectralOptions &opts)
{
  ModalExpansion expansion;
  if (budget == ModeBudget::in_band)
  {
    ModalDecomposition decomp = compute_inband_modes(model, model.band(), opts);
    expansion.lambdas = Eigen::Map<const Eigen::VectorXd>(decomp.omegas.data(),
                                                          decomp.count())
                            .array()
                            .square();
    expansion.modes = decomp.modes;
    expansion.statics = kernel_component(model, kernel_basis(model, opts));
  }
  else
  {
    if (model.size() > opts.dense_limit)
    {
      throw Error("full modal expansion needs a dense eigensolve; model too large");
    }
    Eigenpairs all = dense_eigenpairs(model.K(), model.M());
    if (all.worst_residual > mode_residual_tol)
    {
      throw EigensolverFailure("dense eigenpairs not converged; worst residual " +
                               std::to_string(all.worst_residual));
    }
    const double threshold = kernel_tol * std::max(1.0, all.values.cwiseAbs().maxCoeff());
    Eigen::Index nk = 0;
    while (nk < all.values.size() && all.values(nk) <= threshold)
    {
      nk++;
    }
    expansion.statics = kernel_component(model, all.vectors.leftCols(nk));
    const Eigen::Index nm = all.values.size() - nk;
    expansion.lambdas = all.values.tail(nm);
    expansion.modes = all.vectors.rightCols(nm);
    for (Eigen::Index k = 0; k < nm; k++)
    {
      expansion.modes.col(k) /= std::sqrt(expansion.lambdas(k) + 1.0);
    }
  }
  expansion.coefficients =
      expansion.modes.transpose().cast<std::complex<double>>() * model.b();
  return expansion;
}

ComplexVector modal_solve(const ModalExpansion &expansion, double omega)
{
  if (!(omega > 0.0))
  {
    throw Error("modal expansion requires ω > 0");
  }
  const double omega2 = omega * omega;
  ComplexVector weights(expansion.lambdas.size());
  for (Eigen::Index k = 0; k < expansion.lambdas.size(); k++)
  {
    const double lambda = expansion.lambdas(k);
    if (std::abs(lambda - omega2) <= 1e-12 * lambda)
    {
      throw AtResonance("ω = " + std::to_string(omega) + " coincides with a retained mode");
    }
    weights(k) = I1 * omega * (lambda + 1.0) / (lambda - omega2) * expansion.coefficients(k);
  }
  ComplexVector x = expansion.modes.cast<std::complex<double>>() * weights;
  if (expansion.statics.size() == x.size())
  {
    x += expansion.statics / (I1 * omega);
  }
  return x;
}

ComplexVector modal_solve(const FullOrderModel &model, double omega, ModeBudget budget)
{
  return modal_solve(modal_expansion(model, budget), omega);
}

}  // namespace rbsweep
