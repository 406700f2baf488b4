// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rbsweep/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include "rbsweep/config.hpp"
#include "rbsweep/csv.hpp"
#include "rbsweep/errors.hpp"
#include "rbsweep/matrix_io.hpp"
#include "rbsweep/sweep.hpp"

namespace rbsweep
{

namespace
{

struct Prepared
{
  RunConfig config;
  std::vector<Strategy> strategies;
};

Prepared prepare(const CommandOptions &opts)
{
  Prepared p{load_config(opts.config_path), {}};
  if (opts.out_dir)
  {
    p.config.output_dir = *opts.out_dir;
  }
  if (opts.seed)
  {
    p.config.greedy.seed = *opts.seed;
  }
  p.strategies = p.config.strategies;
  if (!opts.strategies.empty())
  {
    p.strategies.clear();
    for (const auto &name : opts.strategies)
    {
      p.strategies.push_back(parse_strategy(name));
    }
  }
  std::error_code ec;
  std::filesystem::create_directories(p.config.output_dir, ec);
  if (ec || !std::filesystem::is_directory(p.config.output_dir))
  {
    throw ConfigError("cannot create output directory " + p.config.output_dir.string());
  }
  return p;
}

std::ofstream open_csv(const std::filesystem::path &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw ConfigError("cannot write " + path.string());
  }
  return out;
}

template <typename F>
int guarded(std::ostream &err, F &&body)
{
  try
  {
    return body();
  }
  catch (const ConfigError &e)
  {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  }
  catch (const std::exception &e)
  {
    err << "solver error: " << e.what() << "\n";
    return exit_solver;
  }
}

void write_trace_file(const std::filesystem::path &dir, const GreedyTrace &trace)
{
  auto out = open_csv(dir / ("trace_" + to_string(trace.strategy) + ".csv"));
  write_trace(out, trace);
}

}  // namespace

int cmd_greedy(const CommandOptions &opts, std::ostream &err)
{
  return guarded(err,
                 [&]()
                 {
                   const Prepared p = prepare(opts);
                   const FullOrderModel model = build_model(p.config);
                   int code = exit_ok;
                   for (Strategy s : p.strategies)
                   {
                     const GreedyTrace trace = run_greedy(model, p.config.greedy, s);
                     write_trace_file(p.config.output_dir, trace);
                     if (p.config.write_basis && trace.primal)
                     {
                       write_dense_matrix(
                           (p.config.output_dir / ("basis_" + to_string(s) + ".mtx")).string(),
                           trace.primal->basis());
                     }
                     if (!trace.converged)
                     {
                       err << to_string(s) << ": max_iters reached before tol\n";
                       code = exit_max_iters;
                     }
                   }
                   return code;
                 });
}

int cmd_sweep(const CommandOptions &opts, std::ostream &err)
{
  return guarded(err,
                 [&]()
                 {
                   if (!opts.basis_path)
                   {
                     throw ConfigError("sweep needs --basis PATH");
                   }
                   const Prepared p = prepare(opts);
                   const FullOrderModel model = build_model(p.config);
                   const ComplexMatrix basis = read_dense_matrix(*opts.basis_path);
                   const ReducedSpace primal = space_from_basis(model, basis);
                   const SweepOutput sweep =
                       run_sweep(primal, p.config.fom_timing_samples, p.config.greedy.spectral);
                   auto out = open_csv(p.config.output_dir / "sweep.csv");
                   write_sweep(out, sweep);
                   return static_cast<int>(exit_ok);
                 });
}

int cmd_compare(const CommandOptions &opts, std::ostream &err)
{
  return guarded(err,
                 [&]()
                 {
                   const Prepared p = prepare(opts);
                   const std::set<Strategy> distinct(p.strategies.begin(), p.strategies.end());
                   if (distinct.size() < 2)
                   {
                     throw ConfigError("compare needs at least two distinct strategies");
                   }
                   GreedyConfig config = p.config.greedy;
                   config.oracle = true;
                   config.algorithm1_stop = Algorithm1Stop::eps_state;
                   const FullOrderModel model = build_model(p.config);

                   std::vector<GreedyTrace> traces;
                   int code = exit_ok;
                   for (Strategy s : p.strategies)
                   {
                     if (std::any_of(traces.begin(), traces.end(),
                                     [&](const GreedyTrace &t) { return t.strategy == s; }))
                     {
                       continue;
                     }
                     traces.push_back(run_greedy(model, config, s));
                     write_trace_file(p.config.output_dir, traces.back());
                     if (!traces.back().converged)
                     {
                       err << to_string(s) << ": max_iters reached before tol\n";
                       code = exit_max_iters;
                     }
                   }
                   {
                     auto out = open_csv(p.config.output_dir / "compare.csv");
                     write_comparison(out, traces);
                   }
                   {
                     auto out = open_csv(p.config.output_dir / "summary.csv");
                     write_summary(out, traces);
                   }
                   return code;
                 });
}

int cmd_oracle(const CommandOptions &opts, std::ostream &err)
{
  return guarded(err,
                 [&]()
                 {
                   const Prepared p = prepare(opts);
                   const FullOrderModel model = build_model(p.config);
                   std::optional<ComplexMatrix> basis;
                   if (opts.basis_path)
                   {
                     basis = read_dense_matrix(*opts.basis_path);
                   }
                   const OracleReport report =
                       run_oracle(model, p.config.oracle, p.config.greedy.seed,
                                  p.config.greedy.spectral, basis ? &*basis : nullptr);
                   {
                     auto out = open_csv(p.config.output_dir / "curve.csv");
                     write_curve(out, report.curve);
                   }
                   {
                     auto out = open_csv(p.config.output_dir / "modes.csv");
                     write_modes(out, report.decomp, report.coefficients);
                   }
                   {
                     auto out = open_csv(p.config.output_dir / "oracle.txt");
                     write_oracle_report(out, report);
                   }
                   return static_cast<int>(exit_ok);
                 });
}

}  // namespace rbsweep
