// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Models and spaces shared by the unit, phenomena and acceptance tests.

#ifndef RBSWEEP_TEST_FIXTURES_HPP
#define RBSWEEP_TEST_FIXTURES_HPP

#include <algorithm>
#include <limits>
#include "rbsweep/estimators.hpp"
#include "rbsweep/greedy.hpp"
#include "rbsweep/reduction.hpp"
#include "rbsweep/spectral.hpp"

namespace fixture
{

using namespace rbsweep;

// 20 masses, modes 9..12 (0-based) in band.
inline FullOrderModel chain20()
{
  return make_resonator_chain(20, 1.0, FrequencyBand(1.19, 1.60, 1001));
}

inline GreedyConfig chain20_config()
{
  GreedyConfig c;
  c.tol = 2e-7;
  c.seed = 1;
  return c;
}

// 2-D cavity, 71² unknowns, three modes in [6, 9] with the (1,2)/(2,1) pair.
inline FullOrderModel cavity2d()
{
  // node (20, 31) of the 73 x 73 grid
  return make_helmholtz_cavity(2, 72, FrequencyBand(6.0, 9.0, 1001), 31 * 73 + 20);
}

inline ComplexVector mode(const ModalDecomposition &d, int k)
{
  return d.modes.col(k).cast<std::complex<double>>();
}

inline ReducedSpace eigen_space(const FullOrderModel &m, const ModalDecomposition &d,
                                int skip = -1)
{
  ReducedSpace s(m);
  for (int k = 0; k < d.count(); k++)
  {
    if (k != skip)
    {
      s.enrich(mode(d, k));
    }
  }
  return s;
}

// Withheld-mode space: in-band modes minus mode `withheld`, both band endpoints and a
// snapshot 2% above the missing resonance.
struct Pollution
{
  ModalDecomposition decomp;
  Statics statics;
  int withheld = 1;
  ReducedSpace primal, residual;
  double omega_k, half_width;
};

inline Pollution pollution(const FullOrderModel &m, int withheld = 1)
{
  ModalDecomposition d = compute_inband_modes(m, m.band());
  Statics st = compute_statics(m, d);
  ReducedSpace primal = eigen_space(m, d, withheld);
  primal.enrich(solve_fom(m, m.band().omega_min()));
  primal.enrich(solve_fom(m, m.band().omega_max()));
  primal.enrich(solve_fom(m, 1.02 * d.omegas[withheld]));
  ReducedSpace W = compose_residual_space(primal, {st.f0});
  double spacing = std::numeric_limits<double>::infinity();
  for (int k = 1; k < d.count(); k++)
  {
    spacing = std::min(spacing, d.omegas[k] - d.omegas[k - 1]);
  }
  const double wk = d.omegas[withheld];
  return {std::move(d), std::move(st), withheld, std::move(primal), std::move(W), wk,
          0.5 * spacing};
}

// max / median of the curve restricted to |ω - ω_k| ≤ half_width.
inline double window_ratio(const SweepGrid &grid, const std::vector<double> &curve,
                           double omega_k, double half_width)
{
  std::vector<double> inside;
  for (int i = 0; i < grid.size(); i++)
  {
    if (std::abs(grid.nominal(i) - omega_k) <= half_width)
    {
      inside.push_back(curve[i]);
    }
  }
  if (inside.empty())
  {
    return 0.0;
  }
  const double top = *std::max_element(inside.begin(), inside.end());
  std::nth_element(inside.begin(), inside.begin() + inside.size() / 2, inside.end());
  return top / inside[inside.size() / 2];
}

}  // namespace fixture

#endif  // RBSWEEP_TEST_FIXTURES_HPP
