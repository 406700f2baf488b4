// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Comparative behaviour of the strategies on the 20-chain. These are observations about
// the methods rather than contracts of single functions.

#include <doctest.h>
#include "fixtures.hpp"
#include "rbsweep/greedy.hpp"

using namespace rbsweep;

namespace
{

struct Runs
{
  FullOrderModel model = fixture::chain20();
  GreedyTrace a1, a2, rb;

  Runs()
  {
    GreedyConfig c = fixture::chain20_config();
    c.oracle = true;
    c.algorithm1_stop = Algorithm1Stop::eps_state;
    a1 = run_algorithm1(model, c);
    a2 = run_algorithm2(model, c);
    rb = run_residual_baseline(model, c);
  }
};

const Runs &runs()
{
  static const Runs r;
  return r;
}

}  // namespace

TEST_CASE("residual baseline stops early with a larger true error")
{
  const Runs &r = runs();
  MESSAGE("iterations: algorithm2 " << r.a2.rows.size() << ", residual_baseline "
                                    << r.rb.rows.size());
  MESSAGE("final eps_true: algorithm2 " << *r.a2.final_eps_true << ", residual_baseline "
                                        << *r.rb.final_eps_true);
  CHECK(*r.rb.final_eps_true > *r.a2.final_eps_true);
  CHECK(r.rb.rows.size() + 2 <= r.a2.rows.size());
  CHECK(*r.rb.final_eps_true > fixture::chain20_config().tol);
}

TEST_CASE("algorithm 1 residual space is about twice the primal space")
{
  const Runs &r = runs();
  const TraceRow &last = r.a1.rows.back();
  const double ratio = static_cast<double>(last.m_residual) / last.m_primal;
  MESSAGE("algorithm1 m_primal " << last.m_primal << ", m_residual " << last.m_residual);
  CHECK(ratio >= 1.5);
  CHECK(ratio <= 2.5);
}

TEST_CASE("algorithm 1 finds in-band eigen directions early")
{
  const Runs &r = runs();
  const FullOrderModel &m = r.model;
  const ModalDecomposition d = compute_inband_modes(m, m.band());
  const ReducedSpace VB = fixture::eigen_space(m, d);
  const SweepGrid grid(m.band(), d.omegas);
  double best = 1.0;
  const int horizon = std::min<int>(d.count() + 3, static_cast<int>(r.a1.rows.size()));
  for (int k = 0; k < horizon; k++)
  {
    best = std::min(best, VB.new_information_norm(solve_fom(m, r.a1.rows[k].omega)));
  }
  MESSAGE("smallest new-information norm against the in-band modes: " << best);
  CHECK(best < 0.5);
}

TEST_CASE("state estimate stays flat where the residual spikes")
{
  const auto m = fixture::chain20();
  const fixture::Pollution p = fixture::pollution(m);
  const SweepGrid grid(m.band(), p.decomp.omegas);
  const double res = fixture::window_ratio(grid, residual_norm_curve(p.primal, grid), p.omega_k,
                                           p.half_width);
  const double est = fixture::window_ratio(
      grid, state_estimate_curve(p.primal, p.residual, grid), p.omega_k, p.half_width);
  MESSAGE("window max/median: residual " << res << ", state estimate " << est);
  CHECK(res >= 10.0);
  CHECK(est <= 3.0);
}
