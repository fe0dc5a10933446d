#include "slicing/economics.hpp"

#include <numeric>
#include <stdexcept>

namespace slicing {

void PriceBook::validate(std::size_t slices) const {
  if (revenue_per_mbps.size() != slices) throw std::invalid_argument("need one revenue price per slice");
  for (double p : revenue_per_mbps)
    if (p < 0.0) throw std::invalid_argument("prices must be nonnegative");
  if (ran_cost_per_watt < 0.0 || node_cost_per_cycle < 0.0 || link_cost_per_bit < 0.0 ||
      theta_revenue < 0.0 || theta_cost < 0.0)
    throw std::invalid_argument("prices and scaling factors must be nonnegative");
}

std::vector<double> revenue(const std::vector<double>& slice_rate_bps, const PriceBook& prices) {
  std::vector<double> out(slice_rate_bps.size());
  for (std::size_t s = 0; s < out.size(); ++s)
    out[s] = prices.revenue_per_mbps.at(s) * slice_rate_bps[s] * 1e-6;
  return out;
}

std::vector<double> cost_ran(const RadioAllocation& alloc, const RadioScenario& sc,
                             const PriceBook& prices) {
  std::vector<double> out(sc.slice_count, 0.0);
  for (std::size_t i = 0; i < alloc.bs_count; ++i) {
    for (std::size_t k = 0; k < alloc.subchannels; ++k) {
      const std::size_t u = alloc.user_at(i, k);
      if (u == kNoUser) continue;
      out[sc.user_slice.at(u)] += alloc.power(i, k) * prices.ran_cost_per_watt;
    }
  }
  return out;
}

std::vector<double> cost_core(const Placement& pl, const Routing& rt, const CoreNetwork& net,
                              const std::vector<std::size_t>& user_slice,
                              const std::vector<DemandSpec>& demand, const std::vector<bool>& active,
                              const PriceBook& prices) {
  std::vector<double> out(net.chains.size(), 0.0);
  for (std::size_t u = 0; u < pl.vnf.size(); ++u) {
    if (!active.at(u)) continue;
    const std::size_t s = user_slice.at(u);
    const auto& chain = net.chains.at(s);
    const double bits = demand.at(u).packet_bits;
    for (std::size_t j = 0; j < pl.vnf[u].size(); ++j)
      out[s] += bits * chain.vnfs.at(j).cycles_per_bit * prices.node_cost_per_cycle;
    for (std::size_t j = 0; j + 1 < pl.vnf[u].size(); ++j)
      out[s] += bits * static_cast<double>(net.hop_path(pl, rt, u, j).hops()) * prices.link_cost_per_bit;
  }
  return out;
}

double UtilityBreakdown::total_revenue() const {
  return std::accumulate(revenue.begin(), revenue.end(), 0.0);
}

double UtilityBreakdown::total_cost() const { return std::accumulate(cost.begin(), cost.end(), 0.0); }

UtilityBreakdown utility(const std::vector<double>& revenue, const std::vector<double>& cost,
                         double theta_revenue, double theta_cost) {
  if (revenue.size() != cost.size()) throw std::invalid_argument("revenue/cost slice count mismatch");
  UtilityBreakdown out{revenue, cost, std::vector<double>(revenue.size()), 0.0};
  for (std::size_t s = 0; s < revenue.size(); ++s) {
    out.per_slice[s] = theta_revenue * revenue[s] - theta_cost * cost[s];
    out.total += out.per_slice[s];
  }
  return out;
}

}  // namespace slicing
