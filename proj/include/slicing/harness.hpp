#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "slicing/config.hpp"

namespace slicing {

/// Sweep axes and their values: users, demand (w_hat %), csi (Gamma %),
/// delay (tau_max ms), rmin (bps/Hz).
std::vector<double> axis_values(const std::string& axis);
/// Config with one axis point applied, including the parameters each sweep
/// holds fixed.
Config apply_axis(Config cfg, const std::string& axis, double value);

struct SweepRow {
  std::string axis;
  double value = 0.0;
  std::string algorithm;
  std::uint64_t seed = 0;
  double utility = 0.0;
  double sum_rate_bps = 0.0;
  double cost = 0.0;
  double reward = 0.0;
  double violations = 0.0;
  double accepted_users = 0.0;
};

struct SweepOptions {
  std::vector<std::string> algorithms;  // rdpg, sac, ddpg, dist, greedy
  std::vector<std::uint64_t> seeds{1};
  std::vector<double> values;           // empty: the axis defaults
  std::size_t eval_episodes = 20;
  std::size_t workers = 1;
};

/// Trains (or runs greedy) at every (value, algorithm, seed) and scores 20
/// exploration-free episodes. Rows come back in axis order.
std::vector<SweepRow> run_sweep(const Config& cfg, const std::string& axis, const SweepOptions& opt);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// One (algorithm, seed) point of a sweep on a given config.
SweepRow run_point(const Config& cfg, const std::string& algorithm, std::uint64_t seed, std::size_t eval_episodes);

struct Overhead {
  std::uint64_t ran_bits = 0;
  std::uint64_t core_bits = 0;
  std::uint64_t centralized_bits() const { return ran_bits + core_bits; }
};

/// 16-bit fields: RAN 16 I C K, core 16 (N V + L).
Overhead signaling_overhead(std::uint64_t bs, std::uint64_t users, std::uint64_t subchannels, std::uint64_t nodes,
                            std::uint64_t vms, std::uint64_t links);
Overhead signaling_overhead(const ScenarioParams& p);

}  // namespace slicing
