#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "slicing/config.hpp"
#include "slicing/evaluate.hpp"
#include "slicing/scenario.hpp"

namespace slicing {

/// Offsets of the four blocks of the flat continuous action vector.
struct ActionLayout {
  std::size_t bs = 0, subchannels = 0;
  std::size_t select_slots = 0;  // users of the most loaded BS + one idle slot
  std::size_t users = 0;
  std::size_t chain_slots = 0;   // longest chain
  std::size_t vm_choices = 0;    // nodes * VMs per node
  std::size_t vms_per_node = 0;
  std::size_t path_choices = 0;  // k_max

  std::size_t power_offset() const { return 0; }
  std::size_t select_offset() const { return bs * subchannels; }
  std::size_t placement_offset() const { return select_offset() + bs * subchannels * select_slots; }
  std::size_t path_offset() const { return placement_offset() + users * chain_slots * vm_choices; }
  std::size_t radio_dim() const { return placement_offset(); }
  std::size_t core_dim() const { return dim() - radio_dim(); }
  std::size_t dim() const {
    return path_offset() + users * (chain_slots > 0 ? chain_slots - 1 : 0) * path_choices;
  }
};

ActionLayout action_layout(const Scenario& sc);

/// Maps a continuous action in [-1, 1]^d (clamped) to an allocation that
/// satisfies C1-C3 and C5-C6 by construction. Ties resolve to the lowest index.
Allocation decode_action(std::span<const double> action, const Scenario& sc, const ActionLayout& layout);

struct RewardBreakdown {
  double utility_term = 0.0;
  double penalty = 0.0;
  double reward = 0.0;
};

/// reward = scale * total utility - weight * sum of normalized C4/C7/C8/capacity shortfalls.
RewardBreakdown reward_of(const Scenario& sc, const EnvParams& params, const Evaluation& ev);

struct StepOutcome {
  double reward = 0.0;
  double penalty = 0.0;
  std::vector<double> observation;
  Evaluation evaluation;
  bool done = false;
};

struct HistoryEntry {
  std::vector<double> observation;
  std::vector<double> action;
  bool padding = true;
};

/// Episodic POMDP over a fixed scenario. Each slot redraws small-scale fading
/// and the realized demand; the observation carries |h~|, residual link
/// bandwidth, realized demand and residual node CPU.
class SlicingEnv {
 public:
  SlicingEnv(Scenario sc, EnvParams params, std::uint64_t normalization_seed = 0);

  std::vector<double> reset(std::uint64_t seed);
  StepOutcome step(std::span<const double> action);
  StepOutcome step_allocation(const Allocation& alloc);
  /// Scores an allocation against the current slot without advancing time.
  StepOutcome peek(const Allocation& alloc) const;

  std::vector<HistoryEntry> observe_history(std::size_t window) const;

  const Scenario& scenario() const { return sc_; }
  const EnvParams& params() const { return params_; }
  const ActionLayout& layout() const { return layout_; }
  const ChannelState& channels() const { return channels_; }
  const std::vector<double>& demand_realization() const { return w_; }
  const std::vector<double>& observation() const { return obs_; }

  std::size_t observation_dim() const;
  std::size_t action_dim() const { return layout_.dim(); }
  std::size_t time() const { return t_; }
  bool done() const { return t_ >= params_.episode_length; }

  // Feature blocks of the observation, in order.
  std::size_t gain_features() const;
  std::size_t link_features() const { return sc_.core.graph.link_count(); }
  std::size_t demand_features() const { return sc_.user_count(); }
  std::size_t node_features() const { return sc_.core.graph.node_count(); }

  /// Radio agent view: gains and realized demand.
  std::vector<double> ran_observation(const std::vector<double>& obs) const;
  /// Core agent view: link/node residuals, realized demand and the served mask
  /// of the radio decision. Contains no channel information.
  std::vector<double> core_observation(const std::vector<double>& obs,
                                       const RadioAllocation& radio) const;
  std::size_t ran_observation_dim() const { return gain_features() + demand_features(); }
  std::size_t core_observation_dim() const {
    return link_features() + demand_features() + node_features() + sc_.user_count();
  }

 private:
  void draw_slot();
  std::vector<double> build_observation() const;
  StepOutcome finish_step(const Allocation& alloc, std::vector<double> action);

  Scenario sc_;
  EnvParams params_;
  ActionLayout layout_;
  std::mt19937_64 rng_;
  ChannelState channels_;
  std::vector<double> w_;
  std::vector<double> link_residual_;
  std::vector<double> node_residual_;
  std::vector<double> obs_;
  std::vector<HistoryEntry> history_;
  std::size_t t_ = 0;
  bool started_ = false;

  std::vector<double> gain_mean_, gain_std_;
  std::vector<double> demand_mean_, demand_std_;
};

}  // namespace slicing
