// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RBSWEEP_FOM_HPP
#define RBSWEEP_FOM_HPP

#include <complex>
#include <memory>
#include <string>
#include <vector>
#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace rbsweep
{

using SparseMatrix = Eigen::SparseMatrix<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr std::complex<double> I1{0.0, 1.0};

//
// Closed frequency interval with a uniform candidate grid that includes both endpoints.
//
class FrequencyBand
{
private:
  double omega_min_, omega_max_;
  int grid_size_;

public:
  FrequencyBand(double omega_min, double omega_max, int grid_size = 1001);

  double omega_min() const { return omega_min_; }
  double omega_max() const { return omega_max_; }
  int grid_size() const { return grid_size_; }
  double step() const { return (omega_max_ - omega_min_) / (grid_size_ - 1); }

  // Grid point i, with the last point pinned to omega_max exactly.
  double point(int i) const;
  std::vector<double> grid() const;
};

//
// Symmetric pencil (K, M) with excitation b, defining (K - ω² M) x = iω b. The energy
// Gram matrix X = K + M and its Cholesky factorization are built once and shared by
// copies, so a model is cheap to pass around and safe to read from several threads.
//
class FullOrderModel
{
private:
  SparseMatrix K_, M_, X_;
  ComplexVector b_;
  FrequencyBand band_;
  std::shared_ptr<const Eigen::SimplicialLLT<SparseMatrix>> x_factor_;

public:
  // Validates dimensions, symmetry (1e-12 relative) and definiteness of M and X.
  FullOrderModel(SparseMatrix K, SparseMatrix M, ComplexVector b, FrequencyBand band);

  const SparseMatrix &K() const { return K_; }
  const SparseMatrix &M() const { return M_; }
  const SparseMatrix &X() const { return X_; }
  const ComplexVector &b() const { return b_; }
  const FrequencyBand &band() const { return band_; }
  Eigen::Index size() const { return K_.rows(); }

  // Same matrices, different band.
  FullOrderModel with_band(const FrequencyBand &band) const;

  // X⁻¹ r through the cached factorization.
  ComplexVector solve_x(const ComplexVector &r) const;

  // sqrt(rᴴ X⁻¹ r), the norm of r as a functional on the X-inner-product space.
  double dual_norm(const ComplexVector &r) const;
};

struct SystemInstance
{
  SparseMatrix A;  // K - ω² M (real for real ω)
  ComplexVector f;  // iω b
  double omega;
};

SystemInstance assemble(const FullOrderModel &model, double omega);

// Direct solve of (K - ω² M) x = iω b. Throws SingularAtResonance when ω² is within
// relative 1e-10 of a pencil eigenvalue or the factorization breaks down.
ComplexVector solve_fom(const FullOrderModel &model, double omega);

// Same operator, arbitrary right-hand side.
ComplexVector solve_shifted(const FullOrderModel &model, double omega,
                            const ComplexVector &rhs);

// (u, v)_X = vᴴ X u.
std::complex<double> x_inner(const FullOrderModel &model, const ComplexVector &u,
                             const ComplexVector &v);
double x_norm(const FullOrderModel &model, const ComplexVector &u);

// Model generators.
FullOrderModel make_resonator_chain(int n, double coupling, const FrequencyBand &band);
FullOrderModel make_helmholtz_cavity(int dim, int elements_per_side,
                                     const FrequencyBand &band, int port_node,
                                     double length = 1.0);

// Matrix Market coordinate files for K and M, and a "re im" vector file for b.
FullOrderModel import_model(const std::string &path_K, const std::string &path_M,
                            const std::string &path_b, const FrequencyBand &band);

}  // namespace rbsweep

#endif  // RBSWEEP_FOM_HPP
