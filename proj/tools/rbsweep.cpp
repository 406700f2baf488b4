// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <CLI11.hpp>
#include "rbsweep/commands.hpp"

int main(int argc, char **argv)
{
  CLI::App app{"rbsweep: reduced-basis frequency sweeps"};
  app.require_subcommand(1);

  rbsweep::CommandOptions opts;
  std::uint64_t seed = 0;
  std::string out_dir, basis;

  auto add_common = [&](CLI::App *sub)
  {
    sub->add_option("--config", opts.config_path, "run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--seed", seed, "RNG seed (overrides greedy.seed)");
  };

  CLI::App *greedy = app.add_subcommand("greedy", "build a reduced basis");
  add_common(greedy);
  greedy->add_option("--strategy", opts.strategies,
                     "algorithm1, algorithm2 or residual_baseline (repeatable)");

  CLI::App *sweep = app.add_subcommand("sweep", "evaluate a stored basis on the grid");
  add_common(sweep);
  sweep->add_option("--basis", basis, "basis file written by greedy")->required();

  CLI::App *compare = app.add_subcommand("compare", "run strategies side by side");
  add_common(compare);
  compare->add_option("--strategy", opts.strategies, "strategy to include (repeatable)");

  CLI::App *oracle = app.add_subcommand("oracle", "estimator curves and spectral checks");
  add_common(oracle);
  oracle->add_option("--basis", basis, "primal basis (default: modes and snapshots)");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : rbsweep::exit_config;
  }

  for (CLI::App *sub : app.get_subcommands())
  {
    if (sub->count("--out"))
    {
      opts.out_dir = out_dir;
    }
    if (sub->count("--seed"))
    {
      opts.seed = seed;
    }
    if (sub->get_option_no_throw("--basis") && sub->count("--basis"))
    {
      opts.basis_path = basis;
    }
  }

  if (greedy->parsed())
  {
    return rbsweep::cmd_greedy(opts, std::cerr);
  }
  if (sweep->parsed())
  {
    return rbsweep::cmd_sweep(opts, std::cerr);
  }
  if (compare->parsed())
  {
    return rbsweep::cmd_compare(opts, std::cerr);
  }
  return rbsweep::cmd_oracle(opts, std::cerr);
}
