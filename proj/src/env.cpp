#include "slicing/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slicing {

ActionLayout action_layout(const Scenario& sc) {
  ActionLayout l;
  l.bs = sc.radio.bs_count();
  l.subchannels = sc.radio.subchannels;
  l.select_slots = sc.radio.max_users_per_bs() + 1;
  l.users = sc.user_count();
  l.chain_slots = sc.core.max_chain_length();
  l.vms_per_node = sc.core.vms_per_node();
  l.vm_choices = sc.core.graph.node_count() * l.vms_per_node;
  l.path_choices = sc.core.paths.k_max();
  return l;
}

namespace {

double clamp_unit(double v) { return std::isfinite(v) ? std::clamp(v, -1.0, 1.0) : 0.0; }

// First index of the maximum among `candidates` (already ascending).
std::size_t argmax_of(std::span<const double> a, std::size_t base,
                      const std::vector<std::size_t>& candidates) {
  std::size_t best = candidates.front();
  double best_v = clamp_unit(a[base + best]);
  for (std::size_t c : candidates) {
    const double v = clamp_unit(a[base + c]);
    if (v > best_v) {
      best_v = v;
      best = c;
    }
  }
  return best;
}

std::size_t argmax_prefix(std::span<const double> a, std::size_t base, std::size_t count) {
  std::size_t best = 0;
  double best_v = clamp_unit(a[base]);
  for (std::size_t c = 1; c < count; ++c) {
    const double v = clamp_unit(a[base + c]);
    if (v > best_v) {
      best_v = v;
      best = c;
    }
  }
  return best;
}

}  // namespace

Allocation decode_action(std::span<const double> action, const Scenario& sc,
                         const ActionLayout& layout) {
  if (action.size() != layout.dim()) throw std::invalid_argument("action has the wrong dimension");
  const RadioScenario& r = sc.radio;
  Allocation alloc = empty_allocation(sc);

  const double per_channel = r.p_max_w / static_cast<double>(r.subchannels);
  for (std::size_t i = 0; i < layout.bs; ++i) {
    const auto members = r.users_of_bs(i);
    std::vector<std::size_t> slots(members.size());
    for (std::size_t m = 0; m < members.size(); ++m) slots[m] = m;
    slots.push_back(layout.select_slots - 1);
    double total = 0.0;
    for (std::size_t k = 0; k < layout.subchannels; ++k) {
      const std::size_t base = layout.select_offset() + (i * layout.subchannels + k) * layout.select_slots;
      const std::size_t slot = argmax_of(action, base, slots);
      if (slot == layout.select_slots - 1) continue;
      alloc.radio.user_at(i, k) = members[slot];
      const double level = 0.5 * (clamp_unit(action[layout.power_offset() + i * layout.subchannels + k]) + 1.0);
      alloc.radio.power(i, k) = level * per_channel;
      total += alloc.radio.power(i, k);
    }
    if (total > r.p_max_w) {
      const double shrink = r.p_max_w / total;
      for (std::size_t k = 0; k < layout.subchannels; ++k) alloc.radio.power(i, k) *= shrink;
    }
  }

  for (std::size_t u = 0; u < layout.users; ++u) {
    const auto& chain = sc.core.chains.at(r.user_slice[u]);
    auto& row = alloc.placement.vnf[u];
    for (std::size_t j = 0; j < chain.size(); ++j) {
      const std::size_t base = layout.placement_offset() + (u * layout.chain_slots + j) * layout.vm_choices;
      const std::size_t choice = argmax_prefix(action, base, layout.vm_choices);
      row.push_back(VmRef{choice / layout.vms_per_node, choice % layout.vms_per_node});
    }
    auto& hops = alloc.routing.path[u];
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
      const auto& cands = sc.core.paths.paths(row[j].node, row[j + 1].node);
      const std::size_t base = layout.path_offset() + (u * (layout.chain_slots - 1) + j) * layout.path_choices;
      hops.push_back(argmax_prefix(action, base, std::min(cands.size(), layout.path_choices)));
    }
  }
  return alloc;
}

RewardBreakdown reward_of(const Scenario& sc, const EnvParams& params, const Evaluation& ev) {
  const Violations& v = ev.violations;
  double penalty = 0.0;
  const auto shortfall = [&](double slack, double scale) {
    const double x = std::max(0.0, -slack) / scale;
    return params.penalty_cap > 0.0 ? std::min(x, params.penalty_cap) : x;
  };
  for (std::size_t s = 0; s < v.c4.slack.size(); ++s) {
    const double scale = std::max(sc.r_min_bps_hz[s], 1.0) * sc.radio.subchannel_bw_hz;
    penalty += shortfall(v.c4.slack[s], scale);
  }
  for (std::size_t u = 0; u < v.c7.slack.size(); ++u) {
    const double scale = std::max(sc.user_tau_max(u), 1e-3);
    penalty += shortfall(v.c7.slack[u], scale);
  }
  for (std::size_t l = 0; l < v.c8.slack.size(); ++l)
    penalty += shortfall(v.c8.slack[l], sc.core.graph.link(l).bandwidth_bps);
  // capacity slack alternates RAM, storage per used VM; nodes are homogeneous
  const NodeResources& vm = sc.core.nodes.front();
  for (std::size_t i = 0; i < v.capacity.slack.size(); ++i) {
    const double scale = i % 2 == 0 ? vm.vm_ram_bytes() : vm.vm_storage_bytes();
    penalty += shortfall(v.capacity.slack[i], std::max(scale, 1.0));
  }

  RewardBreakdown out;
  out.utility_term = params.utility_scale * ev.utility.total;
  out.penalty = params.penalty_weight * penalty;
  out.reward = out.utility_term - out.penalty;
  return out;
}

SlicingEnv::SlicingEnv(Scenario sc, EnvParams params, std::uint64_t normalization_seed)
    : sc_(std::move(sc)), params_(params), layout_(action_layout(sc_)), rng_(normalization_seed) {
  sc_.validate();
  if (params_.episode_length == 0) throw std::invalid_argument("episode length must be positive");

  const std::size_t draws = std::max<std::size_t>(params_.warmup_draws, 2);
  const std::size_t g = gain_features();
  const std::size_t c = sc_.user_count();
  std::vector<double> gsum(g, 0.0), gsq(g, 0.0), dsum(c, 0.0), dsq(c, 0.0);
  for (std::size_t n = 0; n < draws; ++n) {
    draw_slot();
    const auto& raw = channels_.raw();
    for (std::size_t f = 0; f < g; ++f) {
      const double m = std::abs(raw[f]);
      gsum[f] += m;
      gsq[f] += m * m;
    }
    for (std::size_t u = 0; u < c; ++u) {
      dsum[u] += w_[u];
      dsq[u] += w_[u] * w_[u];
    }
  }
  auto finish = [&](const std::vector<double>& sum, const std::vector<double>& sq,
                    std::vector<double>& mean, std::vector<double>& sd) {
    mean.resize(sum.size());
    sd.resize(sum.size());
    for (std::size_t f = 0; f < sum.size(); ++f) {
      mean[f] = sum[f] / double(draws);
      const double var = std::max(0.0, sq[f] / double(draws) - mean[f] * mean[f]);
      sd[f] = std::sqrt(var);
      if (!(sd[f] > 1e-12 * std::max(1.0, std::abs(mean[f])))) sd[f] = std::max(std::abs(mean[f]), 1.0);
    }
  };
  finish(gsum, gsq, gain_mean_, gain_std_);
  finish(dsum, dsq, demand_mean_, demand_std_);
  reset(normalization_seed);
}

std::size_t SlicingEnv::gain_features() const {
  return sc_.radio.bs_count() * sc_.user_count() * sc_.radio.subchannels;
}

std::size_t SlicingEnv::observation_dim() const {
  return gain_features() + link_features() + demand_features() + node_features();
}

void SlicingEnv::draw_slot() {
  channels_ = realize_channels(sc_.radio, rng_);
  w_.resize(sc_.user_count());
  for (std::size_t u = 0; u < sc_.user_count(); ++u) {
    const DemandSpec& d = sc_.demand[u];
    std::uniform_real_distribution<double> dist(d.lower(), d.upper());
    w_[u] = d.upper() > d.lower() ? dist(rng_) : d.w_bar_bps;
  }
}

std::vector<double> SlicingEnv::build_observation() const {
  std::vector<double> obs;
  obs.reserve(observation_dim());
  const auto& raw = channels_.raw();
  for (std::size_t f = 0; f < raw.size(); ++f)
    obs.push_back((std::abs(raw[f]) - gain_mean_[f]) / gain_std_[f]);
  for (double r : link_residual_) obs.push_back(r);
  for (std::size_t u = 0; u < w_.size(); ++u) obs.push_back((w_[u] - demand_mean_[u]) / demand_std_[u]);
  for (double r : node_residual_) obs.push_back(r);
  return obs;
}

std::vector<double> SlicingEnv::reset(std::uint64_t seed) {
  rng_.seed(seed);
  t_ = 0;
  started_ = true;
  history_.clear();
  link_residual_.assign(link_features(), 1.0);
  node_residual_.assign(node_features(), 1.0);
  draw_slot();
  obs_ = build_observation();
  return obs_;
}

StepOutcome SlicingEnv::peek(const Allocation& alloc) const {
  StepOutcome out;
  out.evaluation = evaluate(sc_, alloc, channels_, w_);
  const auto rb = reward_of(sc_, params_, out.evaluation);
  out.reward = rb.reward;
  out.penalty = rb.penalty;
  out.observation = obs_;
  out.done = done();
  return out;
}

StepOutcome SlicingEnv::finish_step(const Allocation& alloc, std::vector<double> action) {
  if (!started_) throw std::logic_error("step before reset");
  if (done()) throw std::logic_error("step after the episode ended");
  StepOutcome out = peek(alloc);
  history_.push_back(HistoryEntry{obs_, std::move(action), false});

  const auto& load = out.evaluation.realized_link_load;
  for (std::size_t l = 0; l < link_residual_.size(); ++l)
    link_residual_[l] = 1.0 - load[l] / sc_.core.graph.link(l).bandwidth_bps;
  std::fill(node_residual_.begin(), node_residual_.end(), 1.0);
  for (std::size_t u = 0; u < sc_.user_count(); ++u) {
    if (!out.evaluation.served[u]) continue;
    const auto& chain = sc_.core.chains[sc_.radio.user_slice[u]];
    for (std::size_t j = 0; j < alloc.placement.vnf[u].size(); ++j) {
      const NodeId n = alloc.placement.vnf[u][j].node;
      node_residual_[n] -= sc_.demand[u].packet_bits * chain.vnfs[j].cycles_per_bit / sc_.core.nodes[n].cpu_hz;
    }
  }

  ++t_;
  draw_slot();
  obs_ = build_observation();
  out.observation = obs_;
  out.done = done();
  return out;
}

StepOutcome SlicingEnv::step(std::span<const double> action) {
  std::vector<double> a(action.begin(), action.end());
  for (double& v : a) v = clamp_unit(v);
  const Allocation alloc = decode_action(a, sc_, layout_);
  return finish_step(alloc, std::move(a));
}

StepOutcome SlicingEnv::step_allocation(const Allocation& alloc) {
  return finish_step(alloc, std::vector<double>(action_dim(), 0.0));
}

std::vector<HistoryEntry> SlicingEnv::observe_history(std::size_t window) const {
  std::vector<HistoryEntry> out;
  const std::size_t real = std::min(window, history_.size());
  for (std::size_t p = 0; p < window - real; ++p)
    out.push_back(HistoryEntry{std::vector<double>(observation_dim(), 0.0),
                               std::vector<double>(action_dim(), 0.0), true});
  for (std::size_t i = history_.size() - real; i < history_.size(); ++i) out.push_back(history_[i]);
  return out;
}

std::vector<double> SlicingEnv::ran_observation(const std::vector<double>& obs) const {
  std::vector<double> out(obs.begin(), obs.begin() + static_cast<std::ptrdiff_t>(gain_features()));
  const std::size_t d0 = gain_features() + link_features();
  out.insert(out.end(), obs.begin() + static_cast<std::ptrdiff_t>(d0),
             obs.begin() + static_cast<std::ptrdiff_t>(d0 + demand_features()));
  return out;
}

std::vector<double> SlicingEnv::core_observation(const std::vector<double>& obs,
                                                 const RadioAllocation& radio) const {
  std::vector<double> out(obs.begin() + static_cast<std::ptrdiff_t>(gain_features()), obs.end());
  for (std::size_t u = 0; u < sc_.user_count(); ++u) out.push_back(radio.serves(u) ? 1.0 : 0.0);
  return out;
}

}  // namespace slicing
