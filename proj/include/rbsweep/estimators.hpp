// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RBSWEEP_ESTIMATORS_HPP
#define RBSWEEP_ESTIMATORS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <vector>
#include "rbsweep/fom.hpp"
#include "rbsweep/reduction.hpp"
#include "rbsweep/spectral.hpp"

namespace rbsweep
{

struct ResidualData
{
  ComplexVector r;  // iω b - (K - ω² M) x
  double omega = 0.0;
  double dual_norm = 0.0;
};

ResidualData residual(const FullOrderModel &model, const ComplexVector &x, double omega);

// Smallest singular value of X^{-1/2} (K - ω² M) X^{-1/2}, from the eigenvalue of the
// pencil (K - ω² M, X) nearest zero.
double inf_sup(const FullOrderModel &model, double omega, const SpectralOptions &opts = {});

// min over pencil eigenvalues λ of |λ - ω²| / (λ + 1).
double inf_sup_from_spectrum(const Eigen::VectorXd &lambdas, double omega);

// Residual dual norm of the ROM solution divided by β(ω). Throws ResonantBound when
// β(ω) ≤ 1e-12.
double classical_error_bound(const ReducedSpace &space, double omega,
                             const SpectralOptions &opts = {});

struct StateEstimate
{
  double estimate = 0.0;
  ComplexVector error;  // lifted ε̃(ω)
};

// Galerkin solve of the error equation A ε = r in the residual space W, with r the
// residual of the primal ROM solution at ω.
StateEstimate state_error_estimate(const ReducedSpace &primal,
                                   const ReducedSpace &residual_space, double omega);

//
// Offline/online split of state_error_estimate: the cross operators WᴴKV, WᴴMV and Wᴴb
// are formed once, after which each frequency costs two small dense solves.
//
class StateErrorEstimator
{
private:
  ComplexMatrix Kv_, Mv_, Kw_, Mw_, Kwv_, Mwv_;
  ComplexVector bv_, bw_;

public:
  StateErrorEstimator(const ReducedSpace &primal, const ReducedSpace &residual_space);

  // Primal coefficients c and error coefficients y in the residual basis.
  std::pair<ComplexVector, ComplexVector> solve(double omega) const;

  // ‖W y‖_X, equal to ‖y‖₂ for an X-orthonormal W.
  double estimate(double omega) const;
};

//
// Candidate grid with the nudge policy: points within relative 1e-9 (in ω²) of a known
// pencil eigenvalue move half a step inward before any FOM solve.
//
class SweepGrid
{
private:
  FrequencyBand band_;
  std::vector<double> nominal_, fom_;

public:
  SweepGrid(const FrequencyBand &band, const std::vector<double> &resonances);

  int size() const { return static_cast<int>(nominal_.size()); }
  double step() const { return band_.step(); }
  double nominal(int i) const { return nominal_[i]; }
  double fom_point(int i) const { return fom_[i]; }
  bool nudged(int i) const { return fom_[i] != nominal_[i]; }
  const std::vector<double> &nominal() const { return nominal_; }
  double half_step_inward(int i) const;
};

// FOM solve at grid point i, moving half a step if the solver reports a resonance.
// Returns the solution and the frequency actually used.
std::pair<ComplexVector, double> solve_fom_at(const FullOrderModel &model,
                                              const SweepGrid &grid, int i);

// Lazily filled FOM snapshots on a grid, for the ε_true oracle.
class SnapshotCache
{
private:
  const FullOrderModel *model_;
  const SweepGrid *grid_;
  std::vector<std::optional<ComplexVector>> snapshots_;
  std::vector<double> omegas_;

public:
  SnapshotCache(const FullOrderModel &model, const SweepGrid &grid);
  void fill();
  const ComplexVector &at(int i);
  int size() const { return static_cast<int>(snapshots_.size()); }
  double omega(int i) const { return omegas_[i]; }
  void store(int i, const ComplexVector &x, double omega);
};

struct IndicatorValue
{
  double value = 0.0;
  int index = 0;
  double omega = 0.0;  // frequency of the FOM evaluation (possibly nudged)
};

// Index of the largest value; ties go to the lowest index.
int argmax(const std::vector<double> &values);

// Evaluates f at every nominal grid point; on ReducedSingular, retries half a step
// inward.
std::vector<double> evaluate_curve(const SweepGrid &grid,
                                   const std::function<double(double)> &f);

std::vector<double> state_estimate_curve(const ReducedSpace &primal,
                                         const ReducedSpace &residual_space,
                                         const SweepGrid &grid);
std::vector<double> residual_norm_curve(const ReducedSpace &space, const SweepGrid &grid);

// Max over the grid of the new-information norm of the FOM snapshots.
IndicatorValue indicator_true(const ReducedSpace &space, SnapshotCache &cache);
std::vector<double> true_error_curve(const ReducedSpace &space, SnapshotCache &cache);

// New-information norm at the argmax of the state estimate / residual dual norm.
IndicatorValue indicator_state(const ReducedSpace &primal,
                               const ReducedSpace &residual_space, const SweepGrid &grid,
                               SnapshotCache *cache = nullptr);
IndicatorValue indicator_res(const ReducedSpace &space, const SweepGrid &grid,
                             SnapshotCache *cache = nullptr);

double effectivity(double epsilon, double epsilon_true);

struct EstimatorCurve
{
  std::vector<double> omega, residual_dual_norm, state_estimate, infsup, bound;
};

// Full curve over the nominal grid. β and the bound use the whole pencil spectrum, so
// this is meant for models small enough for a dense eigensolve.
EstimatorCurve estimator_curve(const ReducedSpace &primal,
                               const ReducedSpace &residual_space, const SweepGrid &grid,
                               const SpectralOptions &opts = {});

}  // namespace rbsweep

#endif  // RBSWEEP_ESTIMATORS_HPP
