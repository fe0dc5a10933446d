#pragma once

#include <random>
#include <vector>

#include "slicing/evaluate.hpp"

namespace sampling {

using namespace slicing;

inline std::vector<double> random_action(std::size_t dim, std::mt19937_64& rng, double spread = 1.2) {
  std::uniform_real_distribution<double> d(-spread, spread);
  std::vector<double> a(dim);
  for (auto& x : a) x = d(rng);
  return a;
}

/// Structurally valid allocation: every subchannel handed to a random user
/// of its BS (or left idle with probability `idle`), random power under the
/// budget, chains placed on `locality` nodes near the slice ingress.
inline Allocation random_allocation(const Scenario& sc, std::mt19937_64& rng, double idle = 0.1) {
  Allocation a = empty_allocation(sc);
  const auto& r = sc.radio;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < r.bs_count(); ++i) {
    const auto members = r.users_of_bs(i);
    if (members.empty()) continue;
    double total = 0.0;
    for (std::size_t k = 0; k < r.subchannels; ++k) {
      if (unit(rng) < idle) continue;
      a.radio.user_at(i, k) = members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
      a.radio.power(i, k) = (0.3 + 0.7 * unit(rng)) * r.p_max_w / double(r.subchannels);
      total += a.radio.power(i, k);
    }
    if (total > r.p_max_w)
      for (std::size_t k = 0; k < r.subchannels; ++k) a.radio.power(i, k) *= r.p_max_w / total;
  }
  const auto& net = sc.core;
  const std::size_t n = net.graph.node_count();
  for (std::size_t u = 0; u < sc.user_count(); ++u) {
    const std::size_t s = r.user_slice[u];
    const auto& chain = net.chains[s];
    NodeId at = net.ingress[s];
    for (std::size_t j = 0; j < chain.size(); ++j) {
      // stay put or hop to a neighbour most of the time, occasionally jump anywhere
      const double x = unit(rng);
      if (x > 0.9) at = std::uniform_int_distribution<NodeId>(0, n - 1)(rng);
      else if (x > 0.5) {
        const auto& nb = net.graph.neighbors(at);
        at = nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)];
      }
      a.placement.vnf[u].push_back({at, std::uniform_int_distribution<std::size_t>(0, net.vms_per_node() - 1)(rng)});
    }
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
      const auto cands = net.paths.paths(a.placement.vnf[u][j].node, a.placement.vnf[u][j + 1].node).size();
      a.routing.path[u].push_back(std::uniform_int_distribution<std::size_t>(0, cands - 1)(rng));
    }
  }
  return a;
}

}  // namespace sampling
