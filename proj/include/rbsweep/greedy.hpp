// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RBSWEEP_GREEDY_HPP
#define RBSWEEP_GREEDY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include "rbsweep/fom.hpp"
#include "rbsweep/reduction.hpp"
#include "rbsweep/spectral.hpp"

namespace rbsweep
{

enum class Strategy
{
  algorithm1,
  algorithm2,
  residual_baseline
};

std::string to_string(Strategy strategy);
Strategy parse_strategy(const std::string &name);

// Stopping value for Algorithm 1: the estimate norm ‖ε̃(ω*)‖ at the next sample, or the
// new-information norm of the FOM snapshot there (ε_state).
enum class Algorithm1Stop
{
  estimate,
  eps_state
};

struct GreedyConfig
{
  double tol = 2e-7;
  int max_iters = 0;  // 0 means the model dimension
  std::uint64_t seed = 1;
  bool oracle = false;  // ε_true per iteration, one FOM solve per grid point
  Algorithm1Stop algorithm1_stop = Algorithm1Stop::estimate;
  double drop_tol = 1e-10;
  SpectralOptions spectral;
};

enum class Phase
{
  eigen,
  endpoint,
  greedy
};

//
// One sample. xi is the stopping value reported for the row: 1 for eigenmodes, the
// Gram-Schmidt remainder of the snapshot for Algorithm 2 and the residual baseline, and
// the step-10 value for Algorithm 1. eps_true is evaluated on the same primal space xi
// refers to. Sizes are after the row's enrichment.
//
struct TraceRow
{
  int iter = 0;
  double omega = 0.0;
  double xi = 0.0;
  std::optional<double> eps_true, eps_state, eps_res;
  int m_primal = 0;
  int m_residual = 0;
  Phase phase = Phase::greedy;
  std::optional<double> omega_residual;  // Algorithm 1 error-snapshot frequency
  bool collision = false;
};

struct GreedyTrace
{
  Strategy strategy = Strategy::algorithm2;
  std::uint64_t seed = 0;
  std::vector<TraceRow> rows;
  bool converged = false;
  std::optional<double> final_eps_true;
  std::vector<std::string> notes;
  std::optional<ReducedSpace> primal, residual;
};

GreedyTrace run_algorithm2(const FullOrderModel &model, const GreedyConfig &config);
GreedyTrace run_algorithm1(const FullOrderModel &model, const GreedyConfig &config);
GreedyTrace run_residual_baseline(const FullOrderModel &model, const GreedyConfig &config);
GreedyTrace run_greedy(const FullOrderModel &model, const GreedyConfig &config,
                       Strategy strategy);

}  // namespace rbsweep

#endif  // RBSWEEP_GREEDY_HPP
