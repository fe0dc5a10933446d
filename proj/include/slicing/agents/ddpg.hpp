#pragma once

#include "slicing/agents/agent.hpp"
#include "slicing/nn/mlp.hpp"
#include "slicing/nn/optim.hpp"

namespace slicing {

/// Deterministic policy gradient with replay and soft-updated targets.
class DdpgAgent : public Agent {
 public:
  DdpgAgent(std::size_t obs_dim, std::size_t act_dim, const AgentConfig& cfg, std::uint64_t seed);

  std::string name() const override { return "ddpg"; }
  std::vector<double> act(const std::vector<double>& obs, bool explore) override;
  void observe(const std::vector<double>& obs, const std::vector<double>& action, double reward,
               const std::vector<double>& next_obs) override;
  nn::Checkpoint checkpoint() const override;
  void restore(const nn::Checkpoint& ck) override;

  /// One critic step, one actor step and one soft update on a sampled batch.
  UpdateStats update();
  /// Same, on an explicit batch.
  UpdateStats update_on(const std::vector<const Transition*>& batch);

  ReplayBuffer<Transition>& buffer() { return buffer_; }
  nn::Mlp& actor() { return actor_; }
  nn::Mlp& critic() { return critic_; }
  nn::Mlp& target_actor() { return actor_t_; }
  nn::Mlp& target_critic() { return critic_t_; }

 private:
  nn::Mlp actor_, critic_, actor_t_, critic_t_;
  nn::Adam actor_opt_, critic_opt_;
  ReplayBuffer<Transition> buffer_;
  std::size_t steps_ = 0;
};

/// Hidden-layer sizes from the configuration.
std::vector<std::size_t> layer_sizes(std::size_t in, std::size_t out, const AgentConfig& cfg);

}  // namespace slicing
