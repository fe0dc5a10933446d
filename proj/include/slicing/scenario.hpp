#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slicing/config.hpp"
#include "slicing/corenet.hpp"
#include "slicing/economics.hpp"
#include "slicing/radio.hpp"

namespace slicing {

/// One fully specified instance: geometry, core network, demands and prices.
struct Scenario {
  RadioScenario radio;
  CoreNetwork core;
  std::vector<DemandSpec> demand;     // per user
  std::vector<double> r_min_bps_hz;   // per slice
  std::vector<double> tau_max_s;      // per slice
  PriceBook prices;
  std::vector<std::string> slice_names;

  std::size_t user_count() const { return radio.user_count(); }
  std::size_t slice_count() const { return radio.slice_count; }
  double user_tau_max(std::size_t u) const { return tau_max_s.at(radio.user_slice.at(u)); }
  std::vector<double> user_tau_max() const;
  std::vector<double> packet_bits() const;
  std::vector<double> nominal_demand() const;

  void validate() const;
};

SfcChain parse_chain(const std::string& spec, const ScenarioParams& p);
CoreGraph resolve_graph(const ScenarioParams& p);

/// Deterministic per seed: users uniform over the square area, BSs on a grid
/// at cell centres, round-robin slice membership, nearest-BS association and
/// one random ingress/egress pair per slice.
Scenario generate_scenario(const ScenarioParams& p, std::uint64_t seed);

}  // namespace slicing
