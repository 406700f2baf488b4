// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rbsweep/csv.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include "rbsweep/errors.hpp"

namespace rbsweep
{

namespace
{

std::string num(double v)
{
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

std::string opt(const std::optional<double> &v)
{
  return v ? num(*v) : std::string();
}

void trace_row(std::ostream &out, const TraceRow &row)
{
  out << row.iter << "," << num(row.omega) << "," << num(row.xi) << "," << opt(row.eps_true)
      << "," << opt(row.eps_state) << "," << opt(row.eps_res) << "," << row.m_primal << ","
      << row.m_residual;
}

std::vector<std::string> split(const std::string &line)
{
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ','))
  {
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',')
  {
    cells.emplace_back();
  }
  return cells;
}

double to_double(const std::string &s)
{
  try
  {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size())
    {
      throw ParseError("trailing characters in number '" + s + "'");
    }
    return v;
  }
  catch (const std::logic_error &)
  {
    if (s == "inf")
    {
      return std::numeric_limits<double>::infinity();
    }
    throw ParseError("bad number '" + s + "'");
  }
}

}  // namespace

void write_trace(std::ostream &out, const GreedyTrace &trace)
{
  out << "# strategy=" << to_string(trace.strategy) << " seed=" << trace.seed
      << " converged=" << (trace.converged ? "true" : "false") << "\n";
  for (const auto &note : trace.notes)
  {
    out << "# " << note << "\n";
  }
  out << "iter,omega,xi,eps_true,eps_state,eps_res,m_primal,m_residual\n";
  for (const auto &row : trace.rows)
  {
    trace_row(out, row);
    out << "\n";
  }
  for (const auto &row : trace.rows)
  {
    if (row.omega_residual)
    {
      out << "# residual_sample iter=" << row.iter << " omega=" << num(*row.omega_residual)
          << (row.collision ? " collision" : "") << "\n";
    }
  }
  if (trace.final_eps_true)
  {
    out << "# final_eps_true=" << num(*trace.final_eps_true) << "\n";
  }
}

void write_comparison(std::ostream &out, const std::vector<GreedyTrace> &traces)
{
  out << "strategy,iter,omega,xi,eps_true,eps_state,eps_res,m_primal,m_residual,effectivity\n";
  for (const auto &trace : traces)
  {
    for (const auto &row : trace.rows)
    {
      out << to_string(trace.strategy) << ",";
      trace_row(out, row);
      out << ",";
      if (row.phase != Phase::eigen && row.eps_true && *row.eps_true > 0.0)
      {
        out << num(row.xi / *row.eps_true);
      }
      out << "\n";
    }
  }
}

void write_summary(std::ostream &out, const std::vector<GreedyTrace> &traces)
{
  out << "strategy,converged,iterations,m_primal,m_residual,final_eps_true\n";
  for (const auto &trace : traces)
  {
    const TraceRow last = trace.rows.empty() ? TraceRow{} : trace.rows.back();
    out << to_string(trace.strategy) << "," << (trace.converged ? "true" : "false") << ","
        << trace.rows.size() << "," << last.m_primal << "," << last.m_residual << ","
        << opt(trace.final_eps_true) << "\n";
  }
}

void write_curve(std::ostream &out, const EstimatorCurve &curve)
{
  out << "omega,residual_dual_norm,state_estimate,infsup,bound\n";
  for (std::size_t i = 0; i < curve.omega.size(); i++)
  {
    out << num(curve.omega[i]) << "," << num(curve.residual_dual_norm[i]) << ","
        << num(curve.state_estimate[i]) << "," << num(curve.infsup[i]) << ","
        << num(curve.bound[i]) << "\n";
  }
}

void write_modes(std::ostream &out, const ModalDecomposition &decomp,
                 const ComplexVector &coefficients)
{
  out << "omega_n,re_An,im_An\n";
  for (int k = 0; k < decomp.count(); k++)
  {
    out << num(decomp.omegas[k]) << "," << num(coefficients(k).real()) << ","
        << num(coefficients(k).imag()) << "\n";
  }
}

void write_sweep(std::ostream &out, const SweepOutput &sweep)
{
  out << "omega,re_y,im_y,residual_dual_norm,state_estimate\n";
  for (std::size_t i = 0; i < sweep.omega.size(); i++)
  {
    out << num(sweep.omega[i]) << "," << num(sweep.y[i].real()) << ","
        << num(sweep.y[i].imag()) << "," << num(sweep.residual_dual_norm[i]) << ","
        << num(sweep.state_estimate[i]) << "\n";
  }
  if (sweep.rom_seconds && sweep.fom_seconds)
  {
    out << "# timing rom_seconds_per_solve=" << num(*sweep.rom_seconds)
        << " fom_seconds_per_solve=" << num(*sweep.fom_seconds)
        << " speedup=" << num(*sweep.fom_seconds / *sweep.rom_seconds) << "\n";
  }
}

CsvTable read_csv(std::istream &in)
{
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line))
  {
    if (!line.empty() && line.back() == '\r')
    {
      line.pop_back();
    }
    if (line.empty())
    {
      continue;
    }
    if (line[0] == '#')
    {
      const auto start = line.find_first_not_of("# ");
      table.comments.push_back(start == std::string::npos ? "" : line.substr(start));
      continue;
    }
    auto cells = split(line);
    if (!have_header)
    {
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size())
    {
      throw ParseError("row has " + std::to_string(cells.size()) + " cells, header has " +
                       std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (!have_header)
  {
    throw ParseError("CSV has no header");
  }
  return table;
}

SweepOutput read_sweep(std::istream &in)
{
  const CsvTable table = read_csv(in);
  const std::vector<std::string> expected = {"omega", "re_y", "im_y", "residual_dual_norm",
                                             "state_estimate"};
  if (table.header != expected)
  {
    throw ParseError("unexpected sweep CSV header");
  }
  SweepOutput sweep;
  for (const auto &row : table.rows)
  {
    sweep.omega.push_back(to_double(row[0]));
    sweep.y.emplace_back(to_double(row[1]), to_double(row[2]));
    sweep.residual_dual_norm.push_back(to_double(row[3]));
    sweep.state_estimate.push_back(to_double(row[4]));
  }
  for (const auto &comment : table.comments)
  {
    std::istringstream ss(comment);
    std::string word;
    while (ss >> word)
    {
      const auto eq = word.find('=');
      if (eq == std::string::npos)
      {
        continue;
      }
      const std::string key = word.substr(0, eq), value = word.substr(eq + 1);
      if (key == "rom_seconds_per_solve")
      {
        sweep.rom_seconds = to_double(value);
      }
      else if (key == "fom_seconds_per_solve")
      {
        sweep.fom_seconds = to_double(value);
      }
    }
  }
  return sweep;
}

}  // namespace rbsweep
