// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rbsweep/fom.hpp"

#include <cmath>
#include <random>
#include "rbsweep/errors.hpp"
#include "rbsweep/matrix_io.hpp"

namespace rbsweep
{

namespace
{

constexpr double symmetry_tol = 1e-12;
constexpr double resonance_tol = 1e-10;
constexpr double residual_tol = 1e-10;

using SparseLU = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

bool is_symmetric(const SparseMatrix &A)
{
  SparseMatrix At = A.transpose();
  return (A - At).norm() <= symmetry_tol * A.norm();
}

ComplexVector lu_solve(const SparseLU &lu, const ComplexVector &rhs)
{
  Eigen::VectorXd re = lu.solve(Eigen::VectorXd(rhs.real()));
  Eigen::VectorXd im = lu.solve(Eigen::VectorXd(rhs.imag()));
  ComplexVector x(rhs.size());
  x.real() = re;
  x.imag() = im;
  return x;
}

// Two steps of inverse iteration on (K - ω² M)⁻¹ M. The Rayleigh quotient ρ satisfies
// |ρ| ≤ 1 / dist(ω², spectrum), so 1 / |ρ| is an upper bound on the distance and a small
// value proves the shift sits on an eigenvalue.
void check_resonance(const SparseLU &lu, const FullOrderModel &model, double omega)
{
  const double omega2 = omega * omega;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  Eigen::VectorXd v(model.size());
  for (Eigen::Index i = 0; i < v.size(); i++)
  {
    v(i) = unif(rng);
  }
  Eigen::VectorXd w = lu.solve(Eigen::VectorXd(model.M() * v));
  const double scale = std::sqrt(w.dot(model.M() * w));
  if (!std::isfinite(scale) || scale == 0.0)
  {
    throw SingularAtResonance("factorization of K - ω²M unusable at ω = " +
                              std::to_string(omega));
  }
  w /= scale;
  Eigen::VectorXd Mw = model.M() * w;
  Eigen::VectorXd z = lu.solve(Mw);
  const double rho = Mw.dot(z);
  if (!std::isfinite(rho) || std::abs(rho) * resonance_tol * omega2 >= 1.0)
  {
    throw SingularAtResonance("ω = " + std::to_string(omega) +
                              " is within relative 1e-10 of a pencil eigenvalue");
  }
}

}  // namespace

FrequencyBand::FrequencyBand(double omega_min, double omega_max, int grid_size)
  : omega_min_(omega_min), omega_max_(omega_max), grid_size_(grid_size)
{
  if (!(std::isfinite(omega_min) && std::isfinite(omega_max)) || !(omega_min > 0.0) ||
      !(omega_max > omega_min))
  {
    throw InvalidBand("band requires 0 < omega_min < omega_max");
  }
  if (grid_size < 2)
  {
    throw InvalidBand("grid_size must be at least 2");
  }
}

double FrequencyBand::point(int i) const
{
  if (i == grid_size_ - 1)
  {
    return omega_max_;
  }
  return omega_min_ + i * step();
}

std::vector<double> FrequencyBand::grid() const
{
  std::vector<double> omegas(grid_size_);
  for (int i = 0; i < grid_size_; i++)
  {
    omegas[i] = point(i);
  }
  return omegas;
}

FullOrderModel::FullOrderModel(SparseMatrix K, SparseMatrix M, ComplexVector b,
                               FrequencyBand band)
  : K_(std::move(K)), M_(std::move(M)), b_(std::move(b)), band_(band)
{
  const auto n = K_.rows();
  if (n == 0 || K_.cols() != n || M_.rows() != n || M_.cols() != n || b_.size() != n)
  {
    throw DimensionMismatch("K is " + std::to_string(K_.rows()) + "x" +
                            std::to_string(K_.cols()) + ", M is " +
                            std::to_string(M_.rows()) + "x" + std::to_string(M_.cols()) +
                            ", b has length " + std::to_string(b_.size()));
  }
  K_.makeCompressed();
  M_.makeCompressed();
  if (!is_symmetric(K_))
  {
    throw NotSymmetric("K is not symmetric");
  }
  if (!is_symmetric(M_))
  {
    throw NotSymmetric("M is not symmetric");
  }
  {
    Eigen::SimplicialLLT<SparseMatrix> llt(M_);
    if (llt.info() != Eigen::Success)
    {
      throw MassNotPositiveDefinite("Cholesky factorization of M failed");
    }
  }
  X_ = K_ + M_;
  X_.makeCompressed();
  auto factor = std::make_shared<Eigen::SimplicialLLT<SparseMatrix>>(X_);
  if (factor->info() != Eigen::Success)
  {
    throw StiffnessNotSemidefinite("K + M is not positive definite");
  }
  x_factor_ = std::move(factor);
}

FullOrderModel FullOrderModel::with_band(const FrequencyBand &band) const
{
  FullOrderModel copy = *this;
  copy.band_ = band;
  return copy;
}

ComplexVector FullOrderModel::solve_x(const ComplexVector &r) const
{
  Eigen::VectorXd re = x_factor_->solve(Eigen::VectorXd(r.real()));
  Eigen::VectorXd im = x_factor_->solve(Eigen::VectorXd(r.imag()));
  ComplexVector y(r.size());
  y.real() = re;
  y.imag() = im;
  return y;
}

double FullOrderModel::dual_norm(const ComplexVector &r) const
{
  return std::sqrt(std::max(0.0, r.dot(solve_x(r)).real()));
}

SystemInstance assemble(const FullOrderModel &model, double omega)
{
  SystemInstance sys;
  sys.A = model.K() - (omega * omega) * model.M();
  sys.f = (I1 * omega) * model.b();
  sys.omega = omega;
  return sys;
}

ComplexVector solve_shifted(const FullOrderModel &model, double omega,
                            const ComplexVector &rhs)
{
  SparseMatrix A = model.K() - (omega * omega) * model.M();
  A.makeCompressed();
  SparseLU lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
  {
    throw SingularAtResonance("factorization of K - ω²M failed at ω = " +
                              std::to_string(omega) + ": " + lu.lastErrorMessage());
  }
  check_resonance(lu, model, omega);

  ComplexVector x = lu_solve(lu, rhs);
  const double rhs_norm = rhs.norm();
  for (int refine = 0; refine < 2; refine++)
  {
    ComplexVector r = rhs - A * x;
    if (r.norm() <= residual_tol * rhs_norm)
    {
      return x;
    }
    x += lu_solve(lu, r);
  }
  if ((rhs - A * x).norm() > residual_tol * rhs_norm)
  {
    throw SingularAtResonance("residual contract violated at ω = " + std::to_string(omega));
  }
  return x;
}

ComplexVector solve_fom(const FullOrderModel &model, double omega)
{
  return solve_shifted(model, omega, (I1 * omega) * model.b());
}

std::complex<double> x_inner(const FullOrderModel &model, const ComplexVector &u,
                             const ComplexVector &v)
{
  return v.dot(model.X() * u);
}

double x_norm(const FullOrderModel &model, const ComplexVector &u)
{
  return std::sqrt(std::max(0.0, x_inner(model, u, u).real()));
}

FullOrderModel import_model(const std::string &path_K, const std::string &path_M,
                            const std::string &path_b, const FrequencyBand &band)
{
  return FullOrderModel(read_matrix_market(path_K), read_matrix_market(path_M),
                        read_vector(path_b), band);
}

}  // namespace rbsweep
