// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RBSWEEP_COMMANDS_HPP
#define RBSWEEP_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rbsweep
{

enum ExitCode
{
  exit_ok = 0,
  exit_config = 1,
  exit_solver = 2,
  exit_max_iters = 3
};

struct CommandOptions
{
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> strategies;  // overrides the config list when non-empty
  std::optional<std::string> basis_path;
};

// Each command reports failures on err and maps them to an exit code.

// trace_<strategy>.csv per strategy and basis_<strategy>.mtx when output.basis is set.
int cmd_greedy(const CommandOptions &opts, std::ostream &err);

// sweep.csv: ROM response over the grid with estimator columns and a timing footer.
int cmd_sweep(const CommandOptions &opts, std::ostream &err);

// compare.csv, summary.csv and the per-strategy traces, with the oracle forced on and
// Algorithm 1 stopping on ε_state. Needs at least two strategies.
int cmd_compare(const CommandOptions &opts, std::ostream &err);

// curve.csv, modes.csv and oracle.txt (modal completeness and inf-sup checks).
int cmd_oracle(const CommandOptions &opts, std::ostream &err);

}  // namespace rbsweep

#endif  // RBSWEEP_COMMANDS_HPP
