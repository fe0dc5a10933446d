#pragma once

#include <vector>

#include "slicing/evaluate.hpp"

namespace slicing {

/// Deterministic heuristic baseline. Users go in descending order of their
/// slice's revenue price (ties by index). Each takes the free subchannel of
/// its BS with the best estimated gain at P_max/K, then its chain is placed
/// VNF by VNF on the VM with the smallest incremental delay (processing plus
/// the hop from the previous function, starting at the slice ingress), ties
/// to the least-loaded then lowest VM, routed over the first candidate path.
/// A user is rolled back if a slice with served users drops below its rate
/// floor, a served user misses its delay budget, or a link or VM overflows.
Allocation greedy_allocate(const Scenario& sc, const ChannelState& ch, const std::vector<double>& w_realized);

}  // namespace slicing
