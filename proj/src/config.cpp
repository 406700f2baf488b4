// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rbsweep/config.hpp"

#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include "rbsweep/errors.hpp"

namespace rbsweep
{

namespace
{

std::string trim(const std::string &s)
{
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos)
  {
    return "";
  }
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string &value)
{
  std::vector<std::string> items;
  std::string item;
  std::istringstream ss(value);
  while (std::getline(ss, item, ','))
  {
    item = trim(item);
    if (!item.empty())
    {
      items.push_back(item);
    }
  }
  return items;
}

double as_double(const std::string &key, const std::string &value)
{
  try
  {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size())
    {
      return v;
    }
  }
  catch (const std::logic_error &)
  {
  }
  throw ParseError(key + ": expected a number, got '" + value + "'");
}

long long as_integer(const std::string &key, const std::string &value)
{
  try
  {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used == value.size())
    {
      return v;
    }
  }
  catch (const std::logic_error &)
  {
  }
  throw ParseError(key + ": expected an integer, got '" + value + "'");
}

int as_int(const std::string &key, const std::string &value)
{
  const long long v = as_integer(key, value);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
  {
    throw ParseError(key + ": value out of range");
  }
  return static_cast<int>(v);
}

bool as_bool(const std::string &key, const std::string &value)
{
  if (value == "true" || value == "yes" || value == "1" || value == "on")
  {
    return true;
  }
  if (value == "false" || value == "no" || value == "0" || value == "off")
  {
    return false;
  }
  throw ParseError(key + ": expected true or false, got '" + value + "'");
}

}  // namespace

RunConfig parse_config(std::istream &in, const std::filesystem::path &base_dir)
{
  RunConfig cfg;
  cfg.base_dir = base_dir;
  bool have_min = false, have_max = false;

  using Setter = std::function<void(const std::string &, const std::string &)>;
  const std::map<std::string, Setter> setters = {
      {"model.generator", [&](auto &, auto &v) { cfg.model.generator = v; }},
      {"model.n", [&](auto &k, auto &v) { cfg.model.n = as_int(k, v); }},
      {"model.coupling", [&](auto &k, auto &v) { cfg.model.coupling = as_double(k, v); }},
      {"model.dim", [&](auto &k, auto &v) { cfg.model.dim = as_int(k, v); }},
      {"model.elements_per_side",
       [&](auto &k, auto &v) { cfg.model.elements_per_side = as_int(k, v); }},
      {"model.port_node", [&](auto &k, auto &v) { cfg.model.port_node = as_int(k, v); }},
      {"model.length", [&](auto &k, auto &v) { cfg.model.length = as_double(k, v); }},
      {"model.K", [&](auto &, auto &v) { cfg.model.path_K = v; }},
      {"model.M", [&](auto &, auto &v) { cfg.model.path_M = v; }},
      {"model.b", [&](auto &, auto &v) { cfg.model.path_b = v; }},
      {"band.omega_min",
       [&](auto &k, auto &v)
       {
         cfg.omega_min = as_double(k, v);
         have_min = true;
       }},
      {"band.omega_max",
       [&](auto &k, auto &v)
       {
         cfg.omega_max = as_double(k, v);
         have_max = true;
       }},
      {"band.grid_size", [&](auto &k, auto &v) { cfg.grid_size = as_int(k, v); }},
      {"greedy.tol", [&](auto &k, auto &v) { cfg.greedy.tol = as_double(k, v); }},
      {"greedy.max_iters", [&](auto &k, auto &v) { cfg.greedy.max_iters = as_int(k, v); }},
      {"greedy.seed",
       [&](auto &k, auto &v)
       {
         const long long s = as_integer(k, v);
         if (s < 0)
         {
           throw ParseError(k + ": seed must be nonnegative");
         }
         cfg.greedy.seed = static_cast<std::uint64_t>(s);
       }},
      {"greedy.drop_tol", [&](auto &k, auto &v) { cfg.greedy.drop_tol = as_double(k, v); }},
      {"greedy.strategies",
       [&](auto &, auto &v)
       {
         cfg.strategies.clear();
         for (const auto &name : split_list(v))
         {
           cfg.strategies.push_back(parse_strategy(name));
         }
       }},
      {"greedy.algorithm1_stop",
       [&](auto &k, auto &v)
       {
         if (v == "estimate")
         {
           cfg.greedy.algorithm1_stop = Algorithm1Stop::estimate;
         }
         else if (v == "eps_state")
         {
           cfg.greedy.algorithm1_stop = Algorithm1Stop::eps_state;
         }
         else
         {
           throw ParseError(k + ": expected estimate or eps_state");
         }
       }},
      {"oracle.enabled", [&](auto &k, auto &v) { cfg.greedy.oracle = as_bool(k, v); }},
      {"oracle.withhold_mode",
       [&](auto &k, auto &v) { cfg.oracle.withhold_mode = as_int(k, v); }},
      {"oracle.snapshots",
       [&](auto &k, auto &v)
       {
         cfg.oracle.snapshots.clear();
         for (const auto &item : split_list(v))
         {
           cfg.oracle.snapshots.push_back(as_double(k, item));
         }
       }},
      {"oracle.completeness_samples",
       [&](auto &k, auto &v) { cfg.oracle.completeness_samples = as_int(k, v); }},
      {"output.dir", [&](auto &, auto &v) { cfg.output_dir = v; }},
      {"output.basis", [&](auto &k, auto &v) { cfg.write_basis = as_bool(k, v); }},
      {"sweep.fom_timing_samples",
       [&](auto &k, auto &v) { cfg.fom_timing_samples = as_int(k, v); }},
      {"spectral.dense_limit",
       [&](auto &k, auto &v) { cfg.greedy.spectral.dense_limit = as_int(k, v); }},
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line))
  {
    line_no++;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
    {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty())
    {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
    {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end())
    {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (value.empty())
    {
      throw ParseError("line " + std::to_string(line_no) + ": empty value for " + key);
    }
    it->second(key, value);
  }

  if (!have_min || !have_max)
  {
    throw ConfigError("band.omega_min and band.omega_max are required");
  }
  static_cast<void>(FrequencyBand(cfg.omega_min, cfg.omega_max, cfg.grid_size));
  if (cfg.strategies.empty())
  {
    throw ConfigError("greedy.strategies must name at least one strategy");
  }
  if (!(cfg.greedy.tol > 0.0))
  {
    throw ConfigError("greedy.tol must be positive");
  }
  if (cfg.greedy.max_iters < 0)
  {
    throw ConfigError("greedy.max_iters must be at least 1 (0 selects the model size)");
  }
  return cfg;
}

RunConfig load_config(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open config file " + path);
  }
  return parse_config(in, std::filesystem::path(path).parent_path());
}

FullOrderModel build_model(const RunConfig &config)
{
  const FrequencyBand band(config.omega_min, config.omega_max, config.grid_size);
  const ModelSource &src = config.model;
  if (src.generator == "chain")
  {
    return make_resonator_chain(src.n, src.coupling, band);
  }
  if (src.generator == "cavity")
  {
    return make_helmholtz_cavity(src.dim, src.elements_per_side, band, src.port_node,
                                 src.length);
  }
  if (src.generator == "import")
  {
    if (src.path_K.empty() || src.path_M.empty() || src.path_b.empty())
    {
      throw ConfigError("import needs model.K, model.M and model.b");
    }
    auto resolve = [&](const std::string &p)
    {
      std::filesystem::path path(p);
      return (path.is_absolute() ? path : config.base_dir / path).string();
    };
    return import_model(resolve(src.path_K), resolve(src.path_M), resolve(src.path_b), band);
  }
  throw ConfigError("unknown model.generator '" + src.generator +
                    "' (expected chain, cavity or import)");
}

}  // namespace rbsweep
