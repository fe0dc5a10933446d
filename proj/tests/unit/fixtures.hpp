#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "slicing/scenario.hpp"

namespace fixture {

using namespace slicing;

inline CoreGraph graph_from(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

// Four-node ring with one chord; 100 km links at 1 Gbps.
inline CoreGraph small_core_graph() {
  return graph_from(
      "[nodes]\nn0\nn1\nn2\nn3\n[links]\n"
      "n0 n1 100000 1e9\nn1 n2 100000 1e9\nn2 n3 100000 1e9\nn3 n0 100000 1e9\nn0 n2 150000 1e9\n");
}

/// Hand-built instance: BSs at (0,0) and (400,0), users spread between them.
inline Scenario small_scenario(std::size_t users = 3, std::size_t subchannels = 2,
                               std::size_t vms = 2, std::size_t chain_len = 2) {
  Scenario sc;
  RadioScenario& r = sc.radio;
  r.bs_positions = {{0, 0}, {400, 0}};
  for (std::size_t u = 0; u < users; ++u) {
    const double x = 60.0 + 280.0 * double(u) / double(std::max<std::size_t>(users - 1, 1));
    r.user_positions.push_back({x, 40.0});
    r.user_bs.push_back(nearest_bs(r.bs_positions, r.user_positions.back()));
    r.user_slice.push_back(u % 2);
  }
  r.slice_count = 2;
  r.subchannels = subchannels;
  r.subchannel_bw_hz = 20e3;
  r.noise_w = 1e-3 * std::pow(10.0, -17.4) * 20e3;
  r.p_max_w = 4.0;
  r.gamma_csi = 0.02;

  CoreNetwork& c = sc.core;
  c.graph = small_core_graph();
  c.nodes = provision_nodes(c.graph, 1200e6, 64e9, 1e12, vms);
  c.paths = PathCatalog(c.graph, 2);
  for (std::size_t s = 0; s < 2; ++s) {
    SfcChain ch;
    for (std::size_t j = 0; j < chain_len; ++j)
      ch.vnfs.push_back(Vnf{VnfKind(j + s), 200.0 + 100.0 * double(j + s), 1e9, 8e9});
    c.chains.push_back(ch);
  }
  c.ingress = {0, 1};
  c.egress = {2, 3};

  for (std::size_t u = 0; u < users; ++u)
    sc.demand.push_back(DemandSpec{u % 2 == 0 ? 20e6 : 5e6, 0.05, u % 2 == 0 ? 4000.0 : 1000.0});
  sc.r_min_bps_hz = {1.0, 1.0};
  sc.tau_max_s = {0.2, 0.2};
  sc.prices.revenue_per_mbps = {1.0, 1.0};
  sc.slice_names = {"a", "b"};
  sc.validate();
  return sc;
}

}  // namespace fixture
