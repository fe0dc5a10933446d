#include "slicing/agents/greedy.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

namespace slicing {

namespace {

bool marginal_ok(const Scenario& sc, const Allocation& a, const ChannelState& ch, const std::vector<double>& w) {
  const Evaluation ev = evaluate(sc, a, ch, w);
  const auto& v = ev.violations;
  if (!v.c7.ok() || !v.c8.ok() || !v.capacity.ok()) return false;
  // C4 only binds slices that already serve someone
  std::vector<bool> active(sc.slice_count(), false);
  for (std::size_t u = 0; u < sc.user_count(); ++u)
    if (ev.served[u]) active[sc.radio.user_slice[u]] = true;
  for (std::size_t s = 0; s < sc.slice_count(); ++s)
    if (active[s] && v.c4.slack[s] < 0.0) return false;
  return true;
}

}  // namespace

Allocation greedy_allocate(const Scenario& sc, const ChannelState& ch, const std::vector<double>& w) {
  const RadioScenario& r = sc.radio;
  const CoreNetwork& net = sc.core;
  Allocation a = empty_allocation(sc);

  std::vector<std::size_t> order(sc.user_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return sc.prices.revenue_per_mbps[r.user_slice[x]] > sc.prices.revenue_per_mbps[r.user_slice[y]];
  });

  std::map<VmRef, std::pair<double, double>> used;  // RAM, storage
  const double per_channel = r.p_max_w / double(r.subchannels);

  for (std::size_t u : order) {
    const std::size_t i = r.user_bs[u];
    std::size_t best_k = r.subchannels;
    for (std::size_t k = 0; k < r.subchannels; ++k) {
      if (a.radio.user_at(i, k) != kNoUser) continue;
      if (best_k == r.subchannels || ch.power_gain(i, u, k) > ch.power_gain(i, u, best_k)) best_k = k;
    }
    if (best_k == r.subchannels) continue;

    const std::size_t s = r.user_slice[u];
    const auto& chain = net.chains[s];
    auto trial_used = used;
    std::vector<VmRef> placed;
    std::vector<std::size_t> hops;
    NodeId prev = net.ingress[s];
    bool fits = true;
    for (std::size_t j = 0; j < chain.size() && fits; ++j) {
      const Vnf& f = chain.vnfs[j];
      auto best = std::make_tuple(std::numeric_limits<double>::infinity(), 0.0, VmRef{});
      bool found = false;
      for (NodeId n = 0; n < net.graph.node_count(); ++n) {
        const NodeResources& node = net.nodes[n];
        // hop from the previous function over the first candidate path
        double hop = 0.0;
        if (n != prev) {
          const auto& p = net.paths.paths(prev, n).front();
          for (LinkId l : p.links)
            hop += net.graph.link(l).distance_m / kSpeedOfLight + w[u] / net.graph.link(l).bandwidth_bps;
        }
        const double delay = sc.demand[u].packet_bits * f.cycles_per_bit / node.vm_cpu_hz() + hop;
        for (std::size_t v = 0; v < node.vm_count; ++v) {
          const VmRef ref{n, v};
          const auto it = trial_used.find(ref);
          const double ram = it == trial_used.end() ? 0.0 : it->second.first;
          const double sto = it == trial_used.end() ? 0.0 : it->second.second;
          if (ram + f.ram_bytes > node.vm_ram_bytes() || sto + f.storage_bytes > node.vm_storage_bytes()) continue;
          const auto cand = std::make_tuple(delay, ram, ref);
          if (!found || cand < best) best = cand;
          found = true;
        }
      }
      if (!found) {
        fits = false;
        break;
      }
      const VmRef vm = std::get<2>(best);
      auto& slot = trial_used[vm];
      slot.first += f.ram_bytes;
      slot.second += f.storage_bytes;
      if (!placed.empty()) hops.push_back(0);
      placed.push_back(vm);
      prev = vm.node;
    }
    if (!fits) continue;

    Allocation trial = a;
    trial.radio.user_at(i, best_k) = u;
    trial.radio.power(i, best_k) = per_channel;
    trial.placement.vnf[u] = placed;
    trial.routing.path[u] = hops;
    if (!marginal_ok(sc, trial, ch, w)) continue;
    a = std::move(trial);
    used = std::move(trial_used);
  }
  return a;
}

}  // namespace slicing
