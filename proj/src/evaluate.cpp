#include "slicing/evaluate.hpp"

#include <algorithm>
#include <stdexcept>

namespace slicing {

Allocation empty_allocation(const Scenario& sc) {
  Allocation a;
  a.radio = RadioAllocation(sc.radio.bs_count(), sc.radio.subchannels);
  a.placement.vnf.assign(sc.user_count(), {});
  a.routing.path.assign(sc.user_count(), {});
  return a;
}

bool Violations::structural_ok() const { return c2 && c5 && c6 && c3.ok(); }

bool Violations::feasible() const {
  return structural_ok() && c4.ok() && c7.ok() && c8.ok() && capacity.ok();
}

std::size_t Evaluation::served_users() const {
  return static_cast<std::size_t>(std::count(served.begin(), served.end(), true));
}

std::size_t Evaluation::accepted_users() const {
  std::size_t n = 0;
  for (std::size_t u = 0; u < served.size(); ++u)
    if (served[u] && violations.c7.slack[u] >= 0.0) ++n;
  return n;
}

Evaluation evaluate(const Scenario& sc, const Allocation& alloc, const ChannelState& ch,
                    const std::vector<double>& w_realized) {
  const RadioScenario& r = sc.radio;
  Evaluation ev;
  ev.served.resize(sc.user_count());
  for (std::size_t u = 0; u < sc.user_count(); ++u) ev.served[u] = alloc.radio.serves(u);

  Violations& v = ev.violations;
  v.c2 = check_c2(alloc.radio, r);
  v.c3 = check_c3(alloc.radio, r);
  v.c5 = check_c5(alloc.placement, sc.core, r.user_slice, ev.served);
  v.c6 = v.c5 && check_c6(alloc.routing, alloc.placement, sc.core, ev.served);
  if (!v.c2 || !v.c5 || !v.c6) throw std::invalid_argument("allocation violates C2/C5/C6 structure");

  // Only served users are embedded in the core.
  Placement pl = alloc.placement;
  Routing rt = alloc.routing;
  for (std::size_t u = 0; u < sc.user_count(); ++u) {
    if (!ev.served[u]) {
      pl.vnf[u].clear();
      rt.path[u].clear();
    }
  }

  ev.rates = compute_rates(alloc.radio, ch, r);
  v.c4 = check_c4(ev.rates, r, sc.r_min_bps_hz);

  const auto ran = ran_delays(alloc.radio, ev.rates, r, sc.packet_bits());
  const auto proc = processing_delay(pl, sc.core, r.user_slice, sc.demand);
  const auto prop = core_prop_delay(rt, pl, sc.core);
  const auto trans = core_trans_delay(rt, pl, sc.core, w_realized);
  ev.delays.resize(sc.user_count());
  for (std::size_t u = 0; u < sc.user_count(); ++u)
    ev.delays[u] = E2eDelay{proc[u], prop[u], trans[u], ran[u].propagation_s, ran[u].transmission_s};
  v.c7 = check_c7(ev.delays, sc.user_tau_max(), ev.served);
  v.c8 = check_c8(rt, pl, sc.core, sc.demand, ev.served);
  v.capacity = check_capacity(pl, sc.core, r.user_slice, ev.served);
  ev.realized_link_load = link_loads(rt, pl, sc.core, w_realized, ev.served);

  const auto rev = revenue(ev.rates.slice_rate_bps, sc.prices);
  auto cost = cost_ran(alloc.radio, r, sc.prices);
  const auto core_cost = cost_core(pl, rt, sc.core, r.user_slice, sc.demand, ev.served, sc.prices);
  for (std::size_t s = 0; s < cost.size(); ++s) cost[s] += core_cost[s];
  ev.utility = utility(rev, cost, sc.prices.theta_revenue, sc.prices.theta_cost);
  return ev;
}

}  // namespace slicing
