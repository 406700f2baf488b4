// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rbsweep/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <random>
#include "rbsweep/errors.hpp"

namespace rbsweep
{

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

SweepOutput run_sweep(const ReducedSpace &primal, int fom_samples, const SpectralOptions &opts)
{
  const FullOrderModel &model = primal.model();
  ModalDecomposition decomp = compute_inband_modes(model, model.band(), opts);
  const Statics statics = compute_statics(model, decomp, opts);
  std::vector<ComplexVector> extras;
  if (!statics.degenerate)
  {
    extras.push_back(statics.f0);
  }
  const ReducedSpace W = compose_residual_space(primal, extras);
  const SweepGrid grid(model.band(), decomp.omegas);

  SweepOutput out;
  out.omega = grid.nominal();
  out.y.resize(grid.size());
  const auto rom_start = Clock::now();
  for (int i = 0; i < grid.size(); i++)
  {
    RomSolution sol;
    try
    {
      sol = solve_rom(primal, grid.nominal(i));
    }
    catch (const ReducedSingular &)
    {
      sol = solve_rom(primal, grid.half_step_inward(i));
    }
    out.y[i] = primal.reduced_b().dot(sol.coeffs);
  }
  const double rom_total = seconds_since(rom_start);

  out.residual_dual_norm = residual_norm_curve(primal, grid);
  out.state_estimate = state_estimate_curve(primal, W, grid);

  if (fom_samples > 0)
  {
    const int count = std::min(fom_samples, grid.size());
    const auto fom_start = Clock::now();
    for (int s = 0; s < count; s++)
    {
      const int i = count == 1 ? 0 : static_cast<int>(
                                         (static_cast<long long>(s) * (grid.size() - 1)) /
                                         (count - 1));
      static_cast<void>(solve_fom_at(model, grid, i));
    }
    out.fom_seconds = seconds_since(fom_start) / count;
    out.rom_seconds = rom_total / grid.size();
  }
  return out;
}

OracleReport run_oracle(const FullOrderModel &model, const OracleOptions &options,
                        std::uint64_t seed, const SpectralOptions &opts,
                        const ComplexMatrix *basis)
{
  OracleReport report;
  report.decomp = compute_inband_modes(model, model.band(), opts);
  report.statics = compute_statics(model, report.decomp, opts);
  report.decomp.f0 = report.statics.f0;
  report.coefficients = coupling_coefficients(report.decomp, model);

  std::optional<ReducedSpace> primal;
  if (basis)
  {
    primal.emplace(space_from_basis(model, *basis));
  }
  else
  {
    if (options.withhold_mode >= report.decomp.count())
    {
      throw ConfigError("oracle.withhold_mode " + std::to_string(options.withhold_mode) +
                        " but only " + std::to_string(report.decomp.count()) +
                        " modes in band");
    }
    primal.emplace(model);
    for (int k = 0; k < report.decomp.count(); k++)
    {
      if (k != options.withhold_mode)
      {
        primal->enrich(report.decomp.modes.col(k).cast<std::complex<double>>());
      }
    }
    for (double w : options.snapshots)
    {
      primal->enrich(solve_fom(model, w));
    }
  }
  std::vector<ComplexVector> extras;
  if (!report.statics.degenerate)
  {
    extras.push_back(report.statics.f0);
  }
  const ReducedSpace W = compose_residual_space(*primal, extras);
  report.primal_dim = primal->dim();
  report.residual_dim = W.dim();

  const SweepGrid grid(model.band(), report.decomp.omegas);
  report.curve = estimator_curve(*primal, W, grid, opts);

  if (model.size() <= opts.dense_limit && options.completeness_samples > 0)
  {
    const ModalExpansion expansion = modal_expansion(model, ModeBudget::all, opts);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(model.band().omega_min(),
                                                model.band().omega_max());
    double worst = 0.0, worst_beta = 0.0;
    int taken = 0, attempts = 0;
    while (taken < options.completeness_samples && attempts < 100 * options.completeness_samples)
    {
      attempts++;
      const double w = pick(rng);
      ComplexVector x, xm;
      try
      {
        x = solve_fom(model, w);
        xm = modal_solve(expansion, w);
      }
      catch (const SingularAtResonance &)
      {
        continue;
      }
      catch (const AtResonance &)
      {
        continue;
      }
      worst = std::max(worst, x_norm(model, xm - x) / x_norm(model, x));
      const double direct = inf_sup(model, w, opts);
      const double closed = inf_sup_from_spectrum(expansion.lambdas, w);
      worst_beta = std::max(worst_beta, std::abs(direct - closed) / closed);
      taken++;
    }
    report.samples = taken;
    report.completeness_error = worst;
    report.infsup_deviation = worst_beta;
  }
  return report;
}

void write_oracle_report(std::ostream &out, const OracleReport &report)
{
  const auto old = out.precision(17);
  out << "inband_modes " << report.decomp.count() << "\n";
  out << "kernel_dim " << report.statics.kernel_dim << "\n";
  out << "statics_degenerate " << (report.statics.degenerate ? 1 : 0) << "\n";
  out << "primal_dim " << report.primal_dim << "\n";
  out << "residual_dim " << report.residual_dim << "\n";
  out << "samples " << report.samples << "\n";
  if (report.completeness_error)
  {
    out << "completeness_error " << *report.completeness_error << "\n";
  }
  if (report.infsup_deviation)
  {
    out << "infsup_deviation " << *report.infsup_deviation << "\n";
  }
  out.precision(old);
}

}  // namespace rbsweep
