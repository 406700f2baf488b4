// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RBSWEEP_CSV_HPP
#define RBSWEEP_CSV_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>
#include "rbsweep/estimators.hpp"
#include "rbsweep/greedy.hpp"
#include "rbsweep/spectral.hpp"

namespace rbsweep
{

// All writers emit 17 significant digits; lines starting with '#' are comments.

// "iter,omega,xi,eps_true,eps_state,eps_res,m_primal,m_residual", empty cells for values
// that were not computed.
void write_trace(std::ostream &out, const GreedyTrace &trace);

// Joined traces with a leading strategy column and a trailing effectivity column
// (xi / eps_true where both exist, eigen rows excluded).
void write_comparison(std::ostream &out, const std::vector<GreedyTrace> &traces);

// "strategy,converged,iterations,m_primal,m_residual,final_eps_true".
void write_summary(std::ostream &out, const std::vector<GreedyTrace> &traces);

// "omega,residual_dual_norm,state_estimate,infsup,bound".
void write_curve(std::ostream &out, const EstimatorCurve &curve);

// "omega_n,re_An,im_An".
void write_modes(std::ostream &out, const ModalDecomposition &decomp,
                 const ComplexVector &coefficients);

struct SweepOutput
{
  std::vector<double> omega;
  std::vector<std::complex<double>> y;  // bᴴ x̃(ω)
  std::vector<double> residual_dual_norm, state_estimate;
  std::optional<double> rom_seconds, fom_seconds;  // per solve
};

// "omega,re_y,im_y,residual_dual_norm,state_estimate" plus a timing footer comment.
void write_sweep(std::ostream &out, const SweepOutput &sweep);
SweepOutput read_sweep(std::istream &in);

struct CsvTable
{
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;  // without the leading '#'
};

// Plain comma-separated reader; throws ParseError on ragged rows.
CsvTable read_csv(std::istream &in);

}  // namespace rbsweep

#endif  // RBSWEEP_CSV_HPP
