#include "slicing/corenet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace slicing {

std::string to_string(VnfKind k) {
  switch (k) {
    case VnfKind::Nat: return "NAT";
    case VnfKind::Firewall: return "FW";
    case VnfKind::TrafficMonitor: return "TM";
    case VnfKind::WanOptimizer: return "WOC";
    case VnfKind::Idps: return "IDPS";
    case VnfKind::VideoOptimizer: return "VOC";
  }
  return "?";
}

VnfKind vnf_kind_from_string(const std::string& s) {
  static const std::map<std::string, VnfKind> table{
      {"NAT", VnfKind::Nat},          {"FW", VnfKind::Firewall}, {"TM", VnfKind::TrafficMonitor},
      {"WOC", VnfKind::WanOptimizer}, {"IDPS", VnfKind::Idps},   {"VOC", VnfKind::VideoOptimizer}};
  auto it = table.find(s);
  if (it == table.end()) throw std::invalid_argument("unknown VNF kind " + s);
  return it->second;
}

void DemandSpec::validate() const {
  if (w_bar_bps < 0.0) throw std::invalid_argument("nominal demand must be nonnegative");
  if (w_hat_frac < 0.0 || w_hat_frac >= 1.0)
    throw std::invalid_argument("demand deviation must lie in [0, 1)");
  if (packet_bits < 0.0) throw std::invalid_argument("packet size must be nonnegative");
}

std::size_t CoreNetwork::max_chain_length() const {
  std::size_t m = 0;
  for (const auto& c : chains) m = std::max(m, c.size());
  return m;
}

const PhysicalPath& CoreNetwork::hop_path(const Placement& pl, const Routing& rt, std::size_t user,
                                          std::size_t hop) const {
  const auto& row = pl.vnf.at(user);
  const auto& cands = paths.paths(row.at(hop).node, row.at(hop + 1).node);
  const std::size_t idx = rt.path.at(user).at(hop);
  if (idx >= cands.size()) throw std::out_of_range("routing selects a path that does not exist");
  return cands[idx];
}

bool check_c5(const Placement& pl, const CoreNetwork& net, const std::vector<std::size_t>& user_slice,
              const std::vector<bool>& active) {
  if (pl.vnf.size() != user_slice.size()) return false;
  for (std::size_t u = 0; u < user_slice.size(); ++u) {
    const auto& row = pl.vnf[u];
    if (!active[u]) continue;
    if (row.size() != net.chains.at(user_slice[u]).size()) return false;
    for (const VmRef& r : row)
      if (r.node >= net.nodes.size() || r.vm >= net.nodes[r.node].vm_count) return false;
  }
  return true;
}

bool check_c6(const Routing& rt, const Placement& pl, const CoreNetwork& net,
              const std::vector<bool>& active) {
  if (rt.path.size() != pl.vnf.size()) return false;
  for (std::size_t u = 0; u < pl.vnf.size(); ++u) {
    if (!active[u]) continue;
    const auto& row = pl.vnf[u];
    const std::size_t hops = row.empty() ? 0 : row.size() - 1;
    if (rt.path[u].size() != hops) return false;
    for (std::size_t j = 0; j < hops; ++j) {
      if (row[j].node >= net.nodes.size() || row[j + 1].node >= net.nodes.size()) return false;
      if (rt.path[u][j] >= net.paths.paths(row[j].node, row[j + 1].node).size()) return false;
    }
  }
  return true;
}

std::vector<double> processing_delay(const Placement& pl, const CoreNetwork& net,
                                     const std::vector<std::size_t>& user_slice,
                                     const std::vector<DemandSpec>& demand) {
  std::vector<double> out(pl.vnf.size(), 0.0);
  for (std::size_t u = 0; u < pl.vnf.size(); ++u) {
    const auto& chain = net.chains.at(user_slice.at(u));
    for (std::size_t j = 0; j < pl.vnf[u].size(); ++j) {
      const double cpu = net.vm_cpu_hz(pl.vnf[u][j]);
      if (!(cpu > 0.0)) throw std::runtime_error("VM without CPU capacity");
      out[u] += demand.at(u).packet_bits * chain.vnfs.at(j).cycles_per_bit / cpu;
    }
  }
  return out;
}

std::vector<double> core_prop_delay(const Routing& rt, const Placement& pl, const CoreNetwork& net) {
  std::vector<double> out(pl.vnf.size(), 0.0);
  for (std::size_t u = 0; u < pl.vnf.size(); ++u) {
    for (std::size_t j = 0; j + 1 < pl.vnf[u].size(); ++j) {
      for (LinkId l : net.hop_path(pl, rt, u, j).links)
        out[u] += net.graph.link(l).distance_m / kSpeedOfLight;
    }
  }
  return out;
}

std::vector<double> core_trans_delay(const Routing& rt, const Placement& pl, const CoreNetwork& net,
                                     const std::vector<double>& w_realized) {
  std::vector<double> out(pl.vnf.size(), 0.0);
  for (std::size_t u = 0; u < pl.vnf.size(); ++u) {
    for (std::size_t j = 0; j + 1 < pl.vnf[u].size(); ++j) {
      for (LinkId l : net.hop_path(pl, rt, u, j).links) {
        const double bw = net.graph.link(l).bandwidth_bps;
        if (!(bw > 0.0)) throw std::runtime_error("zero-bandwidth link");
        out[u] += w_realized.at(u) / bw;
      }
    }
  }
  return out;
}

std::vector<double> link_loads(const Routing& rt, const Placement& pl, const CoreNetwork& net,
                               const std::vector<double>& user_rate,
                               const std::vector<bool>& active) {
  std::vector<double> load(net.graph.link_count(), 0.0);
  for (std::size_t u = 0; u < pl.vnf.size(); ++u) {
    if (!active[u]) continue;
    for (std::size_t j = 0; j + 1 < pl.vnf[u].size(); ++j)
      for (LinkId l : net.hop_path(pl, rt, u, j).links) load[l] += user_rate.at(u);
  }
  return load;
}

ConstraintCheck check_c8(const Routing& rt, const Placement& pl, const CoreNetwork& net,
                         const std::vector<DemandSpec>& demand, const std::vector<bool>& active) {
  // max over |kappa| <= 1 of kappa * w_hat is attained at kappa = +1 since
  // every coefficient is nonnegative.
  std::vector<double> peak(demand.size());
  for (std::size_t u = 0; u < demand.size(); ++u)
    peak[u] = demand[u].w_bar_bps + demand[u].w_bar_bps * demand[u].w_hat_frac;
  const auto load = link_loads(rt, pl, net, peak, active);
  ConstraintCheck out;
  for (LinkId l = 0; l < load.size(); ++l) out.slack.push_back(net.graph.link(l).bandwidth_bps - load[l]);
  return out;
}

ConstraintCheck check_capacity(const Placement& pl, const CoreNetwork& net,
                               const std::vector<std::size_t>& user_slice,
                               const std::vector<bool>& active) {
  std::map<VmRef, std::pair<double, double>> used;
  for (std::size_t u = 0; u < pl.vnf.size(); ++u) {
    if (!active[u]) continue;
    const auto& chain = net.chains.at(user_slice.at(u));
    for (std::size_t j = 0; j < pl.vnf[u].size(); ++j) {
      auto& [ram, stor] = used[pl.vnf[u][j]];
      ram += chain.vnfs.at(j).ram_bytes;
      stor += chain.vnfs.at(j).storage_bytes;
    }
  }
  ConstraintCheck out;
  for (const auto& [vm, use] : used) {
    const auto& node = net.nodes.at(vm.node);
    out.slack.push_back(node.vm_ram_bytes() - use.first);
    out.slack.push_back(node.vm_storage_bytes() - use.second);
  }
  return out;
}

ConstraintCheck check_c7(const std::vector<E2eDelay>& delays, const std::vector<double>& tau_max_s,
                         const std::vector<bool>& active) {
  ConstraintCheck out;
  for (std::size_t u = 0; u < delays.size(); ++u)
    out.slack.push_back(active[u] ? tau_max_s.at(u) - delays[u].total()
                                  : std::numeric_limits<double>::infinity());
  return out;
}

}  // namespace slicing
