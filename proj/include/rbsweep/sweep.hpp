// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RBSWEEP_SWEEP_HPP
#define RBSWEEP_SWEEP_HPP

#include <iosfwd>
#include <optional>
#include "rbsweep/config.hpp"
#include "rbsweep/csv.hpp"
#include "rbsweep/estimators.hpp"
#include "rbsweep/reduction.hpp"
#include "rbsweep/spectral.hpp"

namespace rbsweep
{

// ROM output and estimators on the full grid. Timing: every grid point for the ROM,
// fom_samples evenly spread points for the FOM (no timing when fom_samples is 0).
SweepOutput run_sweep(const ReducedSpace &primal, int fom_samples,
                      const SpectralOptions &opts = {});

struct OracleReport
{
  ModalDecomposition decomp;
  Statics statics;
  ComplexVector coefficients;
  EstimatorCurve curve;
  Eigen::Index primal_dim = 0, residual_dim = 0;
  int samples = 0;
  // Max relative X-norm gap between the full modal expansion and the FOM, and max
  // relative gap between the direct and closed-form inf-sup, over random frequencies.
  // Unset when the model is too large for a dense spectrum.
  std::optional<double> completeness_error, infsup_deviation;
};

OracleReport run_oracle(const FullOrderModel &model, const OracleOptions &options,
                        std::uint64_t seed, const SpectralOptions &opts = {},
                        const ComplexMatrix *basis = nullptr);

void write_oracle_report(std::ostream &out, const OracleReport &report);

}  // namespace rbsweep

#endif  // RBSWEEP_SWEEP_HPP
