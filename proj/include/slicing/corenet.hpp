#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "slicing/radio.hpp"
#include "slicing/topology.hpp"

namespace slicing {

/// The six VNF kinds a chain may contain; only their cycles/bit differ.
enum class VnfKind { Nat, Firewall, TrafficMonitor, WanOptimizer, Idps, VideoOptimizer };

std::string to_string(VnfKind k);
VnfKind vnf_kind_from_string(const std::string& s);

struct Vnf {
  VnfKind kind = VnfKind::Nat;
  double cycles_per_bit = 0.0;
  double ram_bytes = 0.0;
  double storage_bytes = 0.0;
};

/// Ordered service function chain of one slice.
struct SfcChain {
  std::vector<Vnf> vnfs;
  std::size_t size() const { return vnfs.size(); }
};

struct VmRef {
  NodeId node = 0;
  std::size_t vm = 0;
  auto operator<=>(const VmRef&) const = default;
};

/// beta: vnf[user][j] is the VM running the j-th function of the user's chain.
/// An empty row means the user is not embedded in the core.
struct Placement {
  std::vector<std::vector<VmRef>> vnf;
  bool operator==(const Placement&) const = default;
};

/// Upsilon: path[user][j] indexes PathCatalog::paths(node(j), node(j+1)).
struct Routing {
  std::vector<std::vector<std::size_t>> path;
  bool operator==(const Routing&) const = default;
};

/// Uncertain per-user demand: w~ uniform on [w_bar (1 - w_hat), w_bar (1 + w_hat)].
struct DemandSpec {
  double w_bar_bps = 0.0;
  double w_hat_frac = 0.0;
  double packet_bits = 0.0;

  double lower() const { return w_bar_bps * (1.0 - w_hat_frac); }
  double upper() const { return w_bar_bps * (1.0 + w_hat_frac); }
  void validate() const;
};

/// Immutable core-domain instance.
struct CoreNetwork {
  CoreGraph graph;
  std::vector<NodeResources> nodes;
  PathCatalog paths;
  std::vector<SfcChain> chains;  // one per slice
  std::vector<NodeId> ingress;   // one per slice
  std::vector<NodeId> egress;    // one per slice

  std::size_t vms_per_node() const { return nodes.empty() ? 0 : nodes.front().vm_count; }
  std::size_t max_chain_length() const;
  double vm_cpu_hz(const VmRef& r) const { return nodes.at(r.node).vm_cpu_hz(); }
  const PhysicalPath& hop_path(const Placement& pl, const Routing& rt, std::size_t user,
                               std::size_t hop) const;
};

/// C5: every listed user has each chain position on exactly one existing VM.
bool check_c5(const Placement& pl, const CoreNetwork& net, const std::vector<std::size_t>& user_slice,
              const std::vector<bool>& active);
/// C6: every virtual hop of a placed user selects one valid candidate path.
bool check_c6(const Routing& rt, const Placement& pl, const CoreNetwork& net,
              const std::vector<bool>& active);

/// Per-user sum of w' q_f / r_cpu over the placed chain.
std::vector<double> processing_delay(const Placement& pl, const CoreNetwork& net,
                                     const std::vector<std::size_t>& user_slice,
                                     const std::vector<DemandSpec>& demand);
/// Per-user sum of link propagation (x / nu) over the routed hops.
std::vector<double> core_prop_delay(const Routing& rt, const Placement& pl, const CoreNetwork& net);
/// Per-user sum of w~ / BW over the routed hops.
std::vector<double> core_trans_delay(const Routing& rt, const Placement& pl, const CoreNetwork& net,
                                     const std::vector<double>& w_realized);

/// Load per link given a per-user rate; users outside `active` contribute nothing.
std::vector<double> link_loads(const Routing& rt, const Placement& pl, const CoreNetwork& net,
                               const std::vector<double>& user_rate,
                               const std::vector<bool>& active);

/// C8 robust counterpart: per-link BW - sum w_bar (1 + w_hat).
ConstraintCheck check_c8(const Routing& rt, const Placement& pl, const CoreNetwork& net,
                         const std::vector<DemandSpec>& demand, const std::vector<bool>& active);

/// Per-VM RAM and storage budgets; one slack entry per (VM, resource).
ConstraintCheck check_capacity(const Placement& pl, const CoreNetwork& net,
                               const std::vector<std::size_t>& user_slice,
                               const std::vector<bool>& active);

struct E2eDelay {
  double processing_s = 0.0;
  double core_prop_s = 0.0;
  double core_trans_s = 0.0;
  double ran_prop_s = 0.0;
  double ran_trans_s = 0.0;

  double total() const { return processing_s + core_prop_s + core_trans_s + ran_prop_s + ran_trans_s; }
};

/// C7 slack per user: tau_max - total; inactive users get +inf slack.
ConstraintCheck check_c7(const std::vector<E2eDelay>& delays, const std::vector<double>& tau_max_s,
                         const std::vector<bool>& active);

}  // namespace slicing
