#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace slicing {

using NodeId = std::size_t;
using LinkId = std::size_t;

/// Distance used for links declared with `-` in the distance column.
inline constexpr double kDefaultLinkDistanceM = 100e3;

struct Link {
  NodeId a = 0;
  NodeId b = 0;
  double distance_m = 0.0;
  double bandwidth_bps = 0.0;
};

/// Undirected physical core graph. Nodes are indexed in declaration order.
class CoreGraph {
 public:
  CoreGraph() = default;
  CoreGraph(std::vector<std::string> names, std::vector<Link> links);

  std::size_t node_count() const { return names_.size(); }
  std::size_t link_count() const { return links_.size(); }

  const std::string& name(NodeId n) const { return names_.at(n); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Link>& links() const { return links_; }
  const Link& link(LinkId l) const { return links_.at(l); }

  bool connected(NodeId a, NodeId b) const { return connectivity_[a * node_count() + b] != 0; }
  /// Link index joining a and b; throws if the nodes are not adjacent.
  LinkId link_between(NodeId a, NodeId b) const;
  /// Neighbours of n in ascending node order.
  const std::vector<NodeId>& neighbors(NodeId n) const { return adjacency_.at(n); }

  /// Row-major symmetric 0/1 matrix.
  std::vector<std::vector<int>> connectivity_matrix() const;

  NodeId find(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::vector<Link> links_;
  std::vector<int> connectivity_;
  std::vector<LinkId> link_index_;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Parses the `[nodes]` / `[links]` text format (`-` as distance selects
/// kDefaultLinkDistanceM). Throws std::runtime_error on
/// malformed input, self loops, duplicate links, or a disconnected graph.
CoreGraph parse_graph(std::istream& in);
CoreGraph load_graph(const std::filesystem::path& file);
/// Path of the bundled Abilene topology.
std::filesystem::path bundled_abilene_path();

struct PhysicalPath {
  std::vector<NodeId> nodes;
  std::vector<LinkId> links;  // traversal order; |links| == |nodes| - 1

  std::size_t hops() const { return links.size(); }
  double distance_m(const CoreGraph& g) const;
  bool uses(LinkId l) const;
};

/// Up to k_max simple paths from `from` to `to`, ordered by hop count, then
/// total distance, then lexicographic node sequence.
std::vector<PhysicalPath> enumerate_paths(const CoreGraph& g, NodeId from, NodeId to,
                                          std::size_t k_max);

/// Per-node compute/memory budget, split evenly across identical VMs.
struct NodeResources {
  double cpu_hz = 0.0;
  double ram_bytes = 0.0;
  double storage_bytes = 0.0;
  std::size_t vm_count = 0;

  double vm_cpu_hz() const { return cpu_hz / static_cast<double>(vm_count); }
  double vm_ram_bytes() const { return ram_bytes / static_cast<double>(vm_count); }
  double vm_storage_bytes() const { return storage_bytes / static_cast<double>(vm_count); }
};

std::vector<NodeResources> provision_nodes(const CoreGraph& g, double cpu_hz, double ram_bytes,
                                           double storage_bytes, std::size_t vms_per_node);

/// Caches enumerate_paths results for every ordered node pair that gets asked.
class PathCatalog {
 public:
  PathCatalog() = default;
  PathCatalog(const CoreGraph& g, std::size_t k_max);

  std::size_t k_max() const { return k_max_; }
  /// Candidate paths from a to b; a == b yields the single empty path.
  const std::vector<PhysicalPath>& paths(NodeId a, NodeId b) const;

 private:
  std::size_t n_ = 0;
  std::size_t k_max_ = 0;
  std::vector<std::vector<PhysicalPath>> table_;
};

}  // namespace slicing
