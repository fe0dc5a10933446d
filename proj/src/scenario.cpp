#include "slicing/scenario.hpp"

#include <boost/algorithm/string.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

namespace slicing {

std::vector<double> Scenario::user_tau_max() const {
  std::vector<double> out(user_count());
  for (std::size_t u = 0; u < out.size(); ++u) out[u] = user_tau_max(u);
  return out;
}

std::vector<double> Scenario::packet_bits() const {
  std::vector<double> out;
  for (const auto& d : demand) out.push_back(d.packet_bits);
  return out;
}

std::vector<double> Scenario::nominal_demand() const {
  std::vector<double> out;
  for (const auto& d : demand) out.push_back(d.w_bar_bps);
  return out;
}

void Scenario::validate() const {
  radio.validate();
  if (demand.size() != user_count()) throw std::invalid_argument("one demand entry per user");
  for (const auto& d : demand) d.validate();
  if (r_min_bps_hz.size() != slice_count() || tau_max_s.size() != slice_count() ||
      core.chains.size() != slice_count())
    throw std::invalid_argument("per-slice settings do not match the slice count");
  for (const auto& c : core.chains)
    if (c.vnfs.empty()) throw std::invalid_argument("service chains must be non-empty");
  prices.validate(slice_count());
}

SfcChain parse_chain(const std::string& spec, const ScenarioParams& p) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, spec, boost::is_any_of("-"));
  SfcChain chain;
  for (auto& part : parts) {
    boost::algorithm::trim(part);
    if (part.empty()) continue;
    Vnf v;
    v.kind = vnf_kind_from_string(part);
    v.cycles_per_bit = p.vnf_cycles_per_bit.at(static_cast<std::size_t>(v.kind));
    v.ram_bytes = p.vnf_ram_bytes;
    v.storage_bytes = p.vnf_storage_bytes;
    chain.vnfs.push_back(v);
  }
  if (chain.vnfs.empty()) throw std::invalid_argument("empty service chain '" + spec + "'");
  return chain;
}

CoreGraph resolve_graph(const ScenarioParams& p) {
  if (p.graph == "abilene") return load_graph(bundled_abilene_path());
  return load_graph(p.graph);
}

Scenario generate_scenario(const ScenarioParams& p, std::uint64_t seed) {
  p.validate();
  std::mt19937_64 rng(seed);
  Scenario sc;

  RadioScenario& r = sc.radio;
  const std::size_t cols = static_cast<std::size_t>(std::ceil(std::sqrt(double(p.base_stations))));
  const std::size_t rows = (p.base_stations + cols - 1) / cols;
  for (std::size_t b = 0; b < p.base_stations; ++b) {
    const double x = (static_cast<double>(b % cols) + 0.5) * p.area_m / static_cast<double>(cols);
    const double y = (static_cast<double>(b / cols) + 0.5) * p.area_m / static_cast<double>(rows);
    r.bs_positions.push_back({x, y});
  }
  std::uniform_real_distribution<double> coord(0.0, p.area_m);
  for (std::size_t u = 0; u < p.users; ++u) {
    Position pos{coord(rng), coord(rng)};
    r.user_positions.push_back(pos);
    r.user_slice.push_back(u % p.slices);
    r.user_bs.push_back(nearest_bs(r.bs_positions, pos));
  }
  r.slice_count = p.slices;
  r.subchannels = p.subchannels;
  r.subchannel_bw_hz = p.subchannel_bw_hz;
  r.noise_w = p.noise_w();
  r.p_max_w = p.p_max_w;
  r.gamma_csi = p.gamma_csi;
  r.path_loss = PathLossModel{p.path_loss_ref_db, 1.0, p.path_loss_exponent};

  CoreNetwork& core = sc.core;
  core.graph = resolve_graph(p);
  core.nodes = provision_nodes(core.graph, p.node_cpu_hz, p.node_ram_bytes, p.node_storage_bytes,
                               p.vms_per_node);
  core.paths = PathCatalog(core.graph, p.k_paths);
  std::uniform_int_distribution<std::size_t> pick(0, core.graph.node_count() - 1);
  for (std::size_t s = 0; s < p.slices; ++s) {
    core.chains.push_back(parse_chain(p.chains[s], p));
    const NodeId in = pick(rng);
    NodeId out = pick(rng);
    while (core.graph.node_count() > 1 && out == in) out = pick(rng);
    core.ingress.push_back(in);
    core.egress.push_back(out);
  }

  for (std::size_t u = 0; u < p.users; ++u) {
    const std::size_t s = r.user_slice[u];
    sc.demand.push_back(DemandSpec{p.w_bar_bps[s], p.w_hat, p.packet_bits[s]});
  }
  for (std::size_t s = 0; s < p.slices; ++s) {
    sc.r_min_bps_hz.push_back(p.r_min_bps_hz[s]);
    sc.tau_max_s.push_back(p.tau_max_ms[s] * 1e-3);
    sc.slice_names.push_back(p.slice_names[s]);
  }
  sc.prices.revenue_per_mbps.assign(p.revenue_per_mbps.begin(), p.revenue_per_mbps.begin() + p.slices);
  sc.prices.ran_cost_per_watt = p.ran_cost_per_watt;
  sc.prices.node_cost_per_cycle = p.node_cost_per_cycle;
  sc.prices.link_cost_per_bit = p.link_cost_per_bit;
  sc.prices.theta_revenue = p.theta_revenue;
  sc.prices.theta_cost = p.theta_cost;
  sc.validate();
  return sc;
}

}  // namespace slicing
