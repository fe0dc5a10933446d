#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "slicing/config.hpp"
#include "slicing/evaluate.hpp"
#include "slicing/scenario.hpp"

namespace slicing {

struct OracleOptions {
  std::size_t power_levels = 4;  // j/(levels-1) * P_max/K, j = 0..levels-1
  std::uint64_t max_combinations = 10'000'000;
};

struct OracleResult {
  Allocation best;
  double utility = 0.0;
  bool any_feasible = false;
  std::uint64_t visited = 0;
  std::uint64_t feasible = 0;
};

/// Called once per enumerated allocation, feasible or not, in enumeration order.
using OracleVisitor = std::function<void(const Allocation&, const Evaluation&)>;

/// Power grid used by the oracle.
std::vector<double> oracle_power_levels(const Scenario& sc, std::size_t levels);

/// Number of joint decisions the oracle visits. Throws past the instance bounds.
std::uint64_t oracle_search_size(const Scenario& sc, const OracleOptions& opt = {});

/// Exhaustive search over subchannel grants, the power grid, VNF placement and
/// path choice. Keeps the first best in enumeration order. With nothing
/// feasible, returns the empty allocation and its utility.
OracleResult enumerate_optimal(const Scenario& sc, const ChannelState& ch, const std::vector<double>& w,
                               const OracleOptions& opt = {}, const OracleVisitor& visit = {});

/// Small instance for manual oracle runs: a config file plus an [instance]
/// section with `seed` and `power_levels`. A relative graph path resolves
/// against the file's directory.
struct TinyInstance {
  Config config;
  std::uint64_t seed = 1;
  std::size_t power_levels = 4;
};

TinyInstance load_tiny(const std::filesystem::path& file);

}  // namespace slicing
