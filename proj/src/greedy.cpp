// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rbsweep/greedy.hpp"

#include <random>
#include <sstream>
#include "rbsweep/errors.hpp"
#include "rbsweep/estimators.hpp"
#include "rbsweep/parallel.hpp"

namespace rbsweep
{

namespace
{

int iteration_cap(const FullOrderModel &model, const GreedyConfig &config)
{
  if (!(config.tol > 0.0))
  {
    throw ConfigError("greedy tol must be positive");
  }
  if (config.max_iters < 0)
  {
    throw ConfigError("greedy max_iters must be at least 1");
  }
  return config.max_iters > 0 ? config.max_iters : static_cast<int>(model.size());
}

std::string format_double(double v)
{
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

ComplexVector to_complex(const Eigen::VectorXd &v)
{
  return v.cast<std::complex<double>>();
}

// Shared skeleton of Algorithm 2 and the residual baseline: eigenphase, one endpoint
// snapshot by coin flip, then estimator-driven sampling until the Gram-Schmidt remainder
// of the new snapshot drops to tol.
GreedyTrace run_eigen_skeleton(const FullOrderModel &model, const GreedyConfig &config,
                               Strategy strategy)
{
  const int cap = iteration_cap(model, config);
  std::mt19937_64 rng(config.seed);

  GreedyTrace trace;
  trace.strategy = strategy;
  trace.seed = config.seed;

  ModalDecomposition decomp = compute_inband_modes(model, model.band(), config.spectral);
  decomp.f0 = compute_statics(model, decomp, config.spectral).f0;
  const bool use_f0 = (strategy == Strategy::algorithm2);
  std::vector<ComplexVector> extras;
  if (use_f0 && decomp.f0.norm() > 0.0)
  {
    extras.push_back(decomp.f0);
  }

  SweepGrid grid(model.band(), decomp.omegas);
  std::optional<SnapshotCache> cache;
  if (config.oracle)
  {
    cache.emplace(model, grid);
  }

  ReducedSpace primal(model);
  auto residual_size = [&]()
  { return use_f0 ? static_cast<int>(compose_residual_space(primal, extras).dim()) : 0; };
  int iter = 0;

  for (int k = 0; k < decomp.count(); k++)
  {
    primal.enrich(to_complex(decomp.modes.col(k)), config.drop_tol);
    TraceRow row;
    row.iter = ++iter;
    row.omega = decomp.omegas[k];
    // An X-orthonormal mode carries unit new information relative to the modes before it.
    row.xi = 1.0;
    row.phase = Phase::eigen;
    row.m_primal = static_cast<int>(primal.dim());
    row.m_residual = residual_size();
    trace.rows.push_back(row);
  }

  auto fom_sample = [&](int i) -> std::pair<ComplexVector, double>
  {
    if (cache)
    {
      return {cache->at(i), cache->omega(i)};
    }
    return solve_fom_at(model, grid, i);
  };

  const bool coin = (rng() & 1u) != 0;
  const int endpoint = coin ? grid.size() - 1 : 0;
  trace.notes.push_back(std::string("endpoint ") + (coin ? "omega_max" : "omega_min") +
                        " from seed " + std::to_string(config.seed));
  {
    TraceRow row;
    if (cache)
    {
      row.eps_true = indicator_true(primal, *cache).value;
    }
    auto [x, omega] = fom_sample(endpoint);
    row.iter = ++iter;
    row.omega = omega;
    row.xi = primal.enrich(x, config.drop_tol).remainder;
    row.phase = Phase::endpoint;
    row.m_primal = static_cast<int>(primal.dim());
    row.m_residual = residual_size();
    trace.rows.push_back(row);
  }

  for (int it = 0; it < cap; it++)
  {
    int i;
    if (strategy == Strategy::algorithm2)
    {
      ReducedSpace W = compose_residual_space(primal, extras);
      i = argmax(state_estimate_curve(primal, W, grid));
    }
    else
    {
      i = argmax(residual_norm_curve(primal, grid));
    }

    TraceRow row;
    if (cache)
    {
      row.eps_true = indicator_true(primal, *cache).value;
    }
    auto [x, omega] = fom_sample(i);
    row.iter = ++iter;
    row.omega = omega;
    row.xi = primal.enrich(x, config.drop_tol).remainder;
    if (strategy == Strategy::algorithm2)
    {
      row.eps_state = row.xi;
    }
    else
    {
      row.eps_res = row.xi;
    }
    row.phase = Phase::greedy;
    row.m_primal = static_cast<int>(primal.dim());
    row.m_residual = residual_size();
    trace.rows.push_back(row);
    if (row.xi <= config.tol)
    {
      trace.converged = true;
      break;
    }
  }

  if (cache)
  {
    trace.final_eps_true = indicator_true(primal, *cache).value;
  }
  if (use_f0)
  {
    trace.residual = compose_residual_space(primal, extras);
  }
  trace.primal = std::move(primal);
  return trace;
}

}  // namespace

std::string to_string(Strategy strategy)
{
  switch (strategy)
  {
    case Strategy::algorithm1:
      return "algorithm1";
    case Strategy::algorithm2:
      return "algorithm2";
    case Strategy::residual_baseline:
      return "residual_baseline";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string &name)
{
  if (name == "algorithm1")
  {
    return Strategy::algorithm1;
  }
  if (name == "algorithm2")
  {
    return Strategy::algorithm2;
  }
  if (name == "residual_baseline")
  {
    return Strategy::residual_baseline;
  }
  throw ConfigError("unknown strategy '" + name +
                    "' (expected algorithm1, algorithm2 or residual_baseline)");
}

GreedyTrace run_algorithm2(const FullOrderModel &model, const GreedyConfig &config)
{
  return run_eigen_skeleton(model, config, Strategy::algorithm2);
}

GreedyTrace run_residual_baseline(const FullOrderModel &model, const GreedyConfig &config)
{
  return run_eigen_skeleton(model, config, Strategy::residual_baseline);
}

GreedyTrace run_algorithm1(const FullOrderModel &model, const GreedyConfig &config)
{
  const int cap = iteration_cap(model, config);
  std::mt19937_64 rng(config.seed);

  GreedyTrace trace;
  trace.strategy = Strategy::algorithm1;
  trace.seed = config.seed;

  // The modes only serve the nudge policy of the FOM evaluations here.
  const ModalDecomposition decomp =
      compute_inband_modes(model, model.band(), config.spectral);
  SweepGrid grid(model.band(), decomp.omegas);
  const int N = grid.size();
  std::optional<SnapshotCache> cache;
  if (config.oracle)
  {
    cache.emplace(model, grid);
  }
  auto fom_sample = [&](int i) -> std::pair<ComplexVector, double>
  {
    if (cache)
    {
      return {cache->at(i), cache->omega(i)};
    }
    return solve_fom_at(model, grid, i);
  };

  int i_star = static_cast<int>(rng() % static_cast<std::uint64_t>(N));
  int i_eps = static_cast<int>(rng() % static_cast<std::uint64_t>(N - 1));
  if (i_eps >= i_star)
  {
    i_eps++;
  }
  trace.notes.push_back("initial samples omega=" + format_double(grid.nominal(i_star)) +
                        " omega_eps=" + format_double(grid.nominal(i_eps)) + " from seed " +
                        std::to_string(config.seed));

  ReducedSpace primal(model);
  std::vector<ComplexVector> error_snapshots;
  std::optional<std::pair<ComplexVector, double>> pending;

  for (int it = 0; it < cap; it++)
  {
    TraceRow row;
    row.iter = it + 1;
    row.collision = (i_star == i_eps);
    if (row.collision)
    {
      trace.notes.push_back("collision at iter " + std::to_string(row.iter) + " omega=" +
                            format_double(grid.nominal(i_star)));
    }

    // Step 3: primal snapshot at ω*.
    auto [x, omega] = pending ? *pending : fom_sample(i_star);
    pending.reset();
    primal.enrich(x, config.drop_tol);
    row.omega = omega;

    // Steps 4-5: error snapshot at ω*_ε from the current ROM.
    {
      double omega_e = grid.fom_point(i_eps);
      ComplexVector err;
      try
      {
        const ComplexVector xr = lift(primal, solve_rom(primal, omega_e));
        err = solve_shifted(model, omega_e, residual(model, xr, omega_e).r);
      }
      catch (const Error &)
      {
        omega_e = grid.half_step_inward(i_eps);
        const ComplexVector xr = lift(primal, solve_rom(primal, omega_e));
        err = solve_shifted(model, omega_e, residual(model, xr, omega_e).r);
      }
      row.omega_residual = omega_e;
      if (x_norm(model, err) > 0.0)
      {
        error_snapshots.push_back(std::move(err));
      }
    }

    // Steps 6-9.
    ReducedSpace W = compose_residual_space(primal, error_snapshots);
    StateErrorEstimator estimator(primal, W);
    const std::vector<double> estimate =
        evaluate_curve(grid, [&](double w) { return estimator.estimate(w); });
    const int next_star = argmax(estimate);

    const ComplexMatrix KV = model.K() * primal.basis(), MV = model.M() * primal.basis();
    const ComplexMatrix KW = model.K() * W.basis(), MW = model.M() * W.basis();
    const std::vector<double> second_residual = evaluate_curve(
        grid,
        [&](double w)
        {
          auto [c, y] = estimator.solve(w);
          ComplexVector r = (I1 * w) * model.b() - (KV * c - (w * w) * (MV * c)) -
                            (KW * y - (w * w) * (MW * y));
          return model.dual_norm(r);
        });
    const int next_eps = argmax(second_residual);

    // Step 10.
    pending = fom_sample(next_star);
    const double eps_state = primal.new_information_norm(pending->first);
    row.eps_state = eps_state;
    row.xi = (config.algorithm1_stop == Algorithm1Stop::eps_state) ? eps_state
                                                                   : estimate[next_star];
    if (cache)
    {
      row.eps_true = indicator_true(primal, *cache).value;
    }
    row.phase = Phase::greedy;
    row.m_primal = static_cast<int>(primal.dim());
    row.m_residual = static_cast<int>(W.dim());
    trace.rows.push_back(row);

    if (row.xi <= config.tol)
    {
      trace.converged = true;
      trace.residual = std::move(W);
      break;
    }
    i_star = next_star;
    i_eps = next_eps;
    if (it + 1 == cap)
    {
      trace.residual = std::move(W);
    }
  }

  if (cache)
  {
    trace.final_eps_true = indicator_true(primal, *cache).value;
  }
  trace.primal = std::move(primal);
  return trace;
}

GreedyTrace run_greedy(const FullOrderModel &model, const GreedyConfig &config,
                       Strategy strategy)
{
  switch (strategy)
  {
    case Strategy::algorithm1:
      return run_algorithm1(model, config);
    case Strategy::algorithm2:
      return run_algorithm2(model, config);
    case Strategy::residual_baseline:
      return run_residual_baseline(model, config);
  }
  throw ConfigError("unknown strategy");
}

}  // namespace rbsweep
