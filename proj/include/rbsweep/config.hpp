// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RBSWEEP_CONFIG_HPP
#define RBSWEEP_CONFIG_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>
#include "rbsweep/fom.hpp"
#include "rbsweep/greedy.hpp"

namespace rbsweep
{

struct ModelSource
{
  std::string generator = "chain";  // chain | cavity | import
  int n = 20;
  double coupling = 1.0;
  int dim = 1;
  int elements_per_side = 40;
  int port_node = 1;
  double length = 1.0;
  std::string path_K, path_M, path_b;  // relative to the config file
};

struct OracleOptions
{
  // Primal space for the curve dump when no basis file is given: the in-band modes,
  // optionally with one withheld, plus FOM snapshots at the listed frequencies.
  int withhold_mode = -1;
  std::vector<double> snapshots;
  int completeness_samples = 20;
};

struct RunConfig
{
  ModelSource model;
  double omega_min = 0.0, omega_max = 0.0;
  int grid_size = 1001;
  GreedyConfig greedy;
  std::vector<Strategy> strategies = {Strategy::algorithm2};
  std::filesystem::path output_dir = ".";
  bool write_basis = true;
  int fom_timing_samples = 5;
  OracleOptions oracle;
  std::filesystem::path base_dir = ".";
};

// Flat "section.key = value" text; '#' starts a comment. Unknown keys and malformed
// values raise ConfigError.
RunConfig parse_config(std::istream &in, const std::filesystem::path &base_dir = ".");
RunConfig load_config(const std::string &path);

FullOrderModel build_model(const RunConfig &config);

}  // namespace rbsweep

#endif  // RBSWEEP_CONFIG_HPP
