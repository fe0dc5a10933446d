#pragma once

#include <vector>

#include "slicing/corenet.hpp"
#include "slicing/economics.hpp"
#include "slicing/radio.hpp"
#include "slicing/scenario.hpp"

namespace slicing {

/// Joint decision across both domains.
struct Allocation {
  RadioAllocation radio;
  Placement placement;
  Routing routing;

  bool operator==(const Allocation&) const = default;
};

/// Empty decision shaped for the scenario: no subchannel grants, no embedding.
Allocation empty_allocation(const Scenario& sc);

struct Violations {
  bool c2 = true;
  bool c5 = true;
  bool c6 = true;
  ConstraintCheck c3, c4, c7, c8, capacity;

  bool structural_ok() const;
  bool feasible() const;
};

struct Evaluation {
  std::vector<bool> served;
  RateReport rates;
  std::vector<E2eDelay> delays;
  Violations violations;
  UtilityBreakdown utility;
  std::vector<double> realized_link_load;  // sum of w~ per link

  std::size_t served_users() const;
  /// Served users that also meet their delay budget.
  std::size_t accepted_users() const;
};

/// Full bookkeeping for one slot: worst-case rates, five-term delays with the
/// realized demand in the core transmission term, all constraint slacks, and
/// the utility. Structurally malformed allocations throw.
Evaluation evaluate(const Scenario& sc, const Allocation& alloc, const ChannelState& ch,
                    const std::vector<double>& w_realized);

}  // namespace slicing
