// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rbsweep/estimators.hpp"

#include <cmath>
#include <limits>
#include "rbsweep/eigensolver.hpp"
#include "rbsweep/errors.hpp"
#include "rbsweep/parallel.hpp"

namespace rbsweep
{

namespace
{

constexpr double resonant_beta = 1e-12;
constexpr double nudge_tol = 1e-9;

}  // namespace

ResidualData residual(const FullOrderModel &model, const ComplexVector &x, double omega)
{
  ResidualData data;
  data.omega = omega;
  data.r = (I1 * omega) * model.b() - (model.K() * x - (omega * omega) * (model.M() * x));
  data.dual_norm = model.dual_norm(data.r);
  return data;
}

double inf_sup(const FullOrderModel &model, double omega, const SpectralOptions &opts)
{
  SparseMatrix A = model.K() - (omega * omega) * model.M();
  if (model.size() <= opts.dense_limit)
  {
    Eigen::MatrixXd Ad(A), Xd(model.X());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(Ad, Xd,
                                                                     Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
    {
      throw EigensolverFailure("inf-sup eigensolve did not converge");
    }
    return solver.eigenvalues().cwiseAbs().minCoeff();
  }
  Eigenpairs pairs = nearest_eigenpairs(A, model.X(), 0.0, 1);
  return std::abs(pairs.values(0));
}

double inf_sup_from_spectrum(const Eigen::VectorXd &lambdas, double omega)
{
  double beta = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < lambdas.size(); k++)
  {
    beta = std::min(beta, std::abs(lambdas(k) - omega * omega) / (lambdas(k) + 1.0));
  }
  return beta;
}

double classical_error_bound(const ReducedSpace &space, double omega,
                             const SpectralOptions &opts)
{
  const double beta = inf_sup(space.model(), omega, opts);
  if (beta <= resonant_beta)
  {
    throw ResonantBound("inf-sup constant " + std::to_string(beta) + " at ω = " +
                        std::to_string(omega));
  }
  const ComplexVector x = lift(space, solve_rom(space, omega));
  return residual(space.model(), x, omega).dual_norm / beta;
}

StateEstimate state_error_estimate(const ReducedSpace &primal,
                                   const ReducedSpace &residual_space, double omega)
{
  const FullOrderModel &model = primal.model();
  const ComplexVector x = lift(primal, solve_rom(primal, omega));
  const ResidualData res = residual(model, x, omega);
  ComplexMatrix Aw = residual_space.reduced_K() - (omega * omega) * residual_space.reduced_M();
  ComplexVector rhs = residual_space.basis().adjoint() * res.r;
  ComplexVector y = solve_reduced(Aw, rhs, omega);
  StateEstimate est;
  est.error = residual_space.lift(y);
  est.estimate = x_norm(model, est.error);
  return est;
}

StateErrorEstimator::StateErrorEstimator(const ReducedSpace &primal,
                                         const ReducedSpace &residual_space)
  : Kv_(primal.reduced_K()), Mv_(primal.reduced_M()), Kw_(residual_space.reduced_K()),
    Mw_(residual_space.reduced_M()), bv_(primal.reduced_b()), bw_(residual_space.reduced_b())
{
  const FullOrderModel &model = primal.model();
  const ComplexMatrix &V = primal.basis();
  const ComplexMatrix &W = residual_space.basis();
  Kwv_ = W.adjoint() * (model.K() * V);
  Mwv_ = W.adjoint() * (model.M() * V);
}

std::pair<ComplexVector, ComplexVector> StateErrorEstimator::solve(double omega) const
{
  const double w2 = omega * omega;
  ComplexVector c = solve_reduced(Kv_ - w2 * Mv_, (I1 * omega) * bv_, omega);
  ComplexVector rhs = (I1 * omega) * bw_ - (Kwv_ - w2 * Mwv_) * c;
  ComplexVector y = solve_reduced(Kw_ - w2 * Mw_, rhs, omega);
  return {std::move(c), std::move(y)};
}

double StateErrorEstimator::estimate(double omega) const
{
  return solve(omega).second.norm();
}

SweepGrid::SweepGrid(const FrequencyBand &band, const std::vector<double> &resonances)
  : band_(band), nominal_(band.grid()), fom_(nominal_)
{
  for (int i = 0; i < size(); i++)
  {
    const double w2 = nominal_[i] * nominal_[i];
    for (double wn : resonances)
    {
      if (std::abs(w2 - wn * wn) <= nudge_tol * wn * wn)
      {
        fom_[i] = half_step_inward(i);
        break;
      }
    }
  }
}

double SweepGrid::half_step_inward(int i) const
{
  return (i == size() - 1) ? nominal_[i] - 0.5 * step() : nominal_[i] + 0.5 * step();
}

std::pair<ComplexVector, double> solve_fom_at(const FullOrderModel &model,
                                              const SweepGrid &grid, int i)
{
  const double omega = grid.fom_point(i);
  try
  {
    return {solve_fom(model, omega), omega};
  }
  catch (const SingularAtResonance &)
  {
    if (grid.nudged(i))
    {
      throw;
    }
    const double moved = grid.half_step_inward(i);
    return {solve_fom(model, moved), moved};
  }
}

SnapshotCache::SnapshotCache(const FullOrderModel &model, const SweepGrid &grid)
  : model_(&model), grid_(&grid), snapshots_(grid.size()), omegas_(grid.size(), 0.0)
{
}

void SnapshotCache::fill()
{
  parallel_for(grid_->size(),
               [&](int i)
               {
                 if (!snapshots_[i])
                 {
                   auto [x, omega] = solve_fom_at(*model_, *grid_, i);
                   snapshots_[i] = std::move(x);
                   omegas_[i] = omega;
                 }
               });
}

const ComplexVector &SnapshotCache::at(int i)
{
  if (!snapshots_[i])
  {
    auto [x, omega] = solve_fom_at(*model_, *grid_, i);
    snapshots_[i] = std::move(x);
    omegas_[i] = omega;
  }
  return *snapshots_[i];
}

void SnapshotCache::store(int i, const ComplexVector &x, double omega)
{
  snapshots_[i] = x;
  omegas_[i] = omega;
}

int argmax(const std::vector<double> &values)
{
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); i++)
  {
    if (values[i] > values[best])
    {
      best = i;
    }
  }
  return best;
}

std::vector<double> evaluate_curve(const SweepGrid &grid,
                                   const std::function<double(double)> &f)
{
  std::vector<double> values(grid.size());
  parallel_for(grid.size(),
               [&](int i)
               {
                 try
                 {
                   values[i] = f(grid.nominal(i));
                 }
                 catch (const ReducedSingular &)
                 {
                   values[i] = f(grid.half_step_inward(i));
                 }
               });
  return values;
}

std::vector<double> state_estimate_curve(const ReducedSpace &primal,
                                         const ReducedSpace &residual_space,
                                         const SweepGrid &grid)
{
  StateErrorEstimator estimator(primal, residual_space);
  return evaluate_curve(grid, [&](double omega) { return estimator.estimate(omega); });
}

std::vector<double> residual_norm_curve(const ReducedSpace &space, const SweepGrid &grid)
{
  const FullOrderModel &model = space.model();
  const ComplexMatrix KV = model.K() * space.basis();
  const ComplexMatrix MV = model.M() * space.basis();
  return evaluate_curve(grid,
                        [&](double omega)
                        {
                          const ComplexVector c = solve_rom(space, omega).coeffs;
                          ComplexVector r = (I1 * omega) * model.b() - KV * c +
                                            (omega * omega) * (MV * c);
                          return model.dual_norm(r);
                        });
}

std::vector<double> true_error_curve(const ReducedSpace &space, SnapshotCache &cache)
{
  cache.fill();
  std::vector<double> values(cache.size());
  parallel_for(cache.size(), [&](int i) { values[i] = space.new_information_norm(cache.at(i)); });
  return values;
}

IndicatorValue indicator_true(const ReducedSpace &space, SnapshotCache &cache)
{
  const std::vector<double> values = true_error_curve(space, cache);
  const int i = argmax(values);
  return {values[i], i, cache.omega(i)};
}

namespace
{

IndicatorValue new_information_at(const ReducedSpace &space, const SweepGrid &grid, int i,
                                  SnapshotCache *cache)
{
  if (cache)
  {
    const ComplexVector &x = cache->at(i);
    return {space.new_information_norm(x), i, cache->omega(i)};
  }
  auto [x, omega] = solve_fom_at(space.model(), grid, i);
  return {space.new_information_norm(x), i, omega};
}

}  // namespace

IndicatorValue indicator_state(const ReducedSpace &primal,
                               const ReducedSpace &residual_space, const SweepGrid &grid,
                               SnapshotCache *cache)
{
  const int i = argmax(state_estimate_curve(primal, residual_space, grid));
  return new_information_at(primal, grid, i, cache);
}

IndicatorValue indicator_res(const ReducedSpace &space, const SweepGrid &grid,
                             SnapshotCache *cache)
{
  const int i = argmax(residual_norm_curve(space, grid));
  return new_information_at(space, grid, i, cache);
}

double effectivity(double epsilon, double epsilon_true)
{
  if (!(epsilon_true > 0.0))
  {
    throw DivisionByZeroTrueError("effectivity undefined for a zero true error");
  }
  return epsilon / epsilon_true;
}

EstimatorCurve estimator_curve(const ReducedSpace &primal,
                               const ReducedSpace &residual_space, const SweepGrid &grid,
                               const SpectralOptions &opts)
{
  const FullOrderModel &model = primal.model();
  EstimatorCurve curve;
  curve.omega = grid.nominal();
  curve.residual_dual_norm = residual_norm_curve(primal, grid);
  curve.state_estimate = state_estimate_curve(primal, residual_space, grid);
  curve.infsup.resize(grid.size());
  if (model.size() <= opts.dense_limit)
  {
    const Eigen::VectorXd lambdas = dense_eigenpairs(model.K(), model.M()).values;
    for (int i = 0; i < grid.size(); i++)
    {
      curve.infsup[i] = inf_sup_from_spectrum(lambdas, grid.nominal(i));
    }
  }
  else
  {
    parallel_for(grid.size(),
                 [&](int i) { curve.infsup[i] = inf_sup(model, grid.nominal(i), opts); });
  }
  curve.bound.resize(grid.size());
  for (int i = 0; i < grid.size(); i++)
  {
    curve.bound[i] = curve.infsup[i] > resonant_beta
                         ? curve.residual_dual_norm[i] / curve.infsup[i]
                         : std::numeric_limits<double>::infinity();
  }
  return curve;
}

}  // namespace rbsweep
