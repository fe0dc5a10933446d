#pragma once

#include <vector>

#include "slicing/corenet.hpp"
#include "slicing/radio.hpp"

namespace slicing {

/// Unit prices of the infrastructure provider.
struct PriceBook {
  std::vector<double> revenue_per_mbps;  // per slice, $/Mbps
  double ran_cost_per_watt = 1e-4;       // $/W per (user, subchannel) grant
  double node_cost_per_cycle = 1e-9;     // $/cycle
  double link_cost_per_bit = 1e-8;       // $/bit per traversed link
  double theta_revenue = 60.0;
  double theta_cost = 1.0;

  void validate(std::size_t slices) const;
};

std::vector<double> revenue(const std::vector<double>& slice_rate_bps, const PriceBook& prices);

/// Sum of xi * p * price over each slice's users.
std::vector<double> cost_ran(const RadioAllocation& alloc, const RadioScenario& sc,
                             const PriceBook& prices);

/// Node term w' q_f price plus link term w' price per traversed link, per slice.
std::vector<double> cost_core(const Placement& pl, const Routing& rt, const CoreNetwork& net,
                              const std::vector<std::size_t>& user_slice,
                              const std::vector<DemandSpec>& demand, const std::vector<bool>& active,
                              const PriceBook& prices);

struct UtilityBreakdown {
  std::vector<double> revenue;
  std::vector<double> cost;
  std::vector<double> per_slice;
  double total = 0.0;

  double total_revenue() const;
  double total_cost() const;
};

/// U^s = theta1 * revenue^s - theta2 * cost^s, and the sum over slices.
UtilityBreakdown utility(const std::vector<double>& revenue, const std::vector<double>& cost,
                         double theta_revenue, double theta_cost);

}  // namespace slicing
