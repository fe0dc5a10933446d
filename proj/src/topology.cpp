#include "slicing/topology.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#ifndef SLICING_DATA_DIR
#define SLICING_DATA_DIR "data"
#endif

namespace slicing {

CoreGraph::CoreGraph(std::vector<std::string> names, std::vector<Link> links)
    : names_(std::move(names)), links_(std::move(links)) {
  const std::size_t n = names_.size();
  if (n == 0) throw std::runtime_error("graph has no nodes");
  if (links_.empty()) throw std::runtime_error("graph has no links");
  connectivity_.assign(n * n, 0);
  link_index_.assign(n * n, std::numeric_limits<LinkId>::max());
  adjacency_.assign(n, {});
  for (LinkId l = 0; l < links_.size(); ++l) {
    const Link& lk = links_[l];
    if (lk.a >= n || lk.b >= n) throw std::runtime_error("link references unknown node");
    if (lk.a == lk.b) throw std::runtime_error("self-loop on node " + names_[lk.a]);
    if (connectivity_[lk.a * n + lk.b])
      throw std::runtime_error("duplicate link " + names_[lk.a] + " - " + names_[lk.b]);
    if (!(lk.distance_m > 0.0)) throw std::runtime_error("link distance must be positive");
    if (!(lk.bandwidth_bps > 0.0)) throw std::runtime_error("link bandwidth must be positive");
    connectivity_[lk.a * n + lk.b] = connectivity_[lk.b * n + lk.a] = 1;
    link_index_[lk.a * n + lk.b] = link_index_[lk.b * n + lk.a] = l;
    adjacency_[lk.a].push_back(lk.b);
    adjacency_[lk.b].push_back(lk.a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  std::vector<bool> seen(n, false);
  std::queue<NodeId> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : adjacency_[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  if (reached != n) throw std::runtime_error("graph is disconnected");
}

LinkId CoreGraph::link_between(NodeId a, NodeId b) const {
  const LinkId l = link_index_.at(a * node_count() + b);
  if (l == std::numeric_limits<LinkId>::max())
    throw std::out_of_range("nodes " + names_.at(a) + " and " + names_.at(b) + " are not adjacent");
  return l;
}

std::vector<std::vector<int>> CoreGraph::connectivity_matrix() const {
  const std::size_t n = node_count();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = connectivity_[i * n + j];
  return m;
}

NodeId CoreGraph::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::out_of_range("unknown node " + name);
  return static_cast<NodeId>(it - names_.begin());
}

CoreGraph parse_graph(std::istream& in) {
  enum class Section { None, Nodes, Links } section = Section::None;
  std::vector<std::string> names;
  std::map<std::string, NodeId> index;
  std::vector<Link> links;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("graph line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string first;
    if (!(row >> first)) continue;
    if (first == "[nodes]") {
      section = Section::Nodes;
      continue;
    }
    if (first == "[links]") {
      section = Section::Links;
      continue;
    }
    switch (section) {
      case Section::None:
        fail("content outside of a section");
        break;
      case Section::Nodes: {
        if (index.count(first)) fail("duplicate node " + first);
        index.emplace(first, names.size());
        names.push_back(first);
        break;
      }
      case Section::Links: {
        std::string second, dist;
        Link lk;
        if (!(row >> second >> dist >> lk.bandwidth_bps))
          fail("expected `id_a id_b distance_m bandwidth_bps`");
        try {
          lk.distance_m = dist == "-" ? kDefaultLinkDistanceM : std::stod(dist);
        } catch (const std::exception&) {
          fail("bad distance '" + dist + "'");
        }
        auto ia = index.find(first);
        auto ib = index.find(second);
        if (ia == index.end() || ib == index.end()) fail("link references undeclared node");
        lk.a = ia->second;
        lk.b = ib->second;
        links.push_back(lk);
        break;
      }
    }
  }
  if (names.empty()) throw std::runtime_error("graph declares no nodes");
  if (links.empty()) throw std::runtime_error("graph declares no links");
  return CoreGraph(std::move(names), std::move(links));
}

CoreGraph load_graph(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open graph file " + file.string());
  return parse_graph(in);
}

std::filesystem::path bundled_abilene_path() {
  return std::filesystem::path(SLICING_DATA_DIR) / "abilene.graph";
}

double PhysicalPath::distance_m(const CoreGraph& g) const {
  double d = 0.0;
  for (LinkId l : links) d += g.link(l).distance_m;
  return d;
}

bool PhysicalPath::uses(LinkId l) const {
  return std::find(links.begin(), links.end(), l) != links.end();
}

namespace {

std::vector<std::size_t> hop_distances_to(const CoreGraph& g, NodeId target) {
  std::vector<std::size_t> dist(g.node_count(), std::numeric_limits<std::size_t>::max());
  std::queue<NodeId> q;
  dist[target] = 0;
  q.push(target);
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] == std::numeric_limits<std::size_t>::max()) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

// Collects every simple path from the current prefix to `to` using exactly
// `budget` more hops.
void extend_exact(const CoreGraph& g, NodeId to, std::size_t budget,
                  const std::vector<std::size_t>& dist, std::vector<NodeId>& prefix,
                  std::vector<bool>& on_path, std::vector<std::vector<NodeId>>& out) {
  const NodeId u = prefix.back();
  if (budget == 0) {
    if (u == to) out.push_back(prefix);
    return;
  }
  if (u == to) return;
  for (NodeId v : g.neighbors(u)) {
    if (on_path[v] || dist[v] > budget - 1) continue;
    on_path[v] = true;
    prefix.push_back(v);
    extend_exact(g, to, budget - 1, dist, prefix, on_path, out);
    prefix.pop_back();
    on_path[v] = false;
  }
}

PhysicalPath make_path(const CoreGraph& g, std::vector<NodeId> nodes) {
  PhysicalPath p;
  p.nodes = std::move(nodes);
  for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i)
    p.links.push_back(g.link_between(p.nodes[i], p.nodes[i + 1]));
  return p;
}

}  // namespace

std::vector<PhysicalPath> enumerate_paths(const CoreGraph& g, NodeId from, NodeId to,
                                          std::size_t k_max) {
  if (from >= g.node_count() || to >= g.node_count())
    throw std::out_of_range("enumerate_paths: node out of range");
  if (from == to) throw std::invalid_argument("enumerate_paths: endpoints must differ");
  if (k_max == 0) throw std::invalid_argument("enumerate_paths: k_max must be >= 1");

  const auto dist = hop_distances_to(g, to);
  if (dist[from] == std::numeric_limits<std::size_t>::max())
    throw std::runtime_error("no path between nodes");

  std::vector<PhysicalPath> result;
  std::vector<bool> on_path(g.node_count(), false);
  for (std::size_t hops = dist[from]; hops < g.node_count() && result.size() < k_max; ++hops) {
    std::vector<std::vector<NodeId>> layer;
    std::vector<NodeId> prefix{from};
    on_path[from] = true;
    extend_exact(g, to, hops, dist, prefix, on_path, layer);
    on_path[from] = false;

    std::vector<PhysicalPath> paths;
    paths.reserve(layer.size());
    for (auto& nodes : layer) paths.push_back(make_path(g, std::move(nodes)));
    std::sort(paths.begin(), paths.end(), [&](const PhysicalPath& x, const PhysicalPath& y) {
      const double dx = x.distance_m(g);
      const double dy = y.distance_m(g);
      if (dx != dy) return dx < dy;
      return x.nodes < y.nodes;
    });
    for (auto& p : paths) {
      if (result.size() == k_max) break;
      result.push_back(std::move(p));
    }
  }
  return result;
}

std::vector<NodeResources> provision_nodes(const CoreGraph& g, double cpu_hz, double ram_bytes,
                                           double storage_bytes, std::size_t vms_per_node) {
  if (vms_per_node == 0) throw std::invalid_argument("each node needs at least one VM");
  if (!(cpu_hz > 0.0)) throw std::invalid_argument("node CPU capacity must be positive");
  return std::vector<NodeResources>(g.node_count(),
                                    NodeResources{cpu_hz, ram_bytes, storage_bytes, vms_per_node});
}

PathCatalog::PathCatalog(const CoreGraph& g, std::size_t k_max)
    : n_(g.node_count()), k_max_(k_max), table_(n_ * n_) {
  for (NodeId a = 0; a < n_; ++a) {
    for (NodeId b = 0; b < n_; ++b) {
      if (a == b) {
        table_[a * n_ + b].push_back(PhysicalPath{{a}, {}});
      } else {
        table_[a * n_ + b] = enumerate_paths(g, a, b, k_max);
      }
    }
  }
}

const std::vector<PhysicalPath>& PathCatalog::paths(NodeId a, NodeId b) const {
  return table_.at(a * n_ + b);
}

}  // namespace slicing
