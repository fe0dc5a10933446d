#pragma once

#include "slicing/agents/agent.hpp"
#include "slicing/nn/lstm.hpp"
#include "slicing/nn/mlp.hpp"
#include "slicing/nn/optim.hpp"

namespace slicing {

/// Recurrent deterministic policy gradient. Actor and critic each run an
/// LSTM over x_t = [o_t; a_{t-1}]; heads see [h_t; x_t] (critic also a_t).
/// Updates unroll whole episodes with BPTT.
class RdpgAgent : public Agent {
 public:
  RdpgAgent(std::size_t obs_dim, std::size_t act_dim, const AgentConfig& cfg, std::uint64_t seed);

  std::string name() const override { return "rdpg"; }
  void begin_episode(std::size_t episode) override;
  std::vector<double> act(const std::vector<double>& obs, bool explore) override;
  void observe(const std::vector<double>& obs, const std::vector<double>& action, double reward,
               const std::vector<double>& next_obs) override;
  void end_episode() override;
  nn::Checkpoint checkpoint() const override;
  void restore(const nn::Checkpoint& ck) override;

  UpdateStats update();
  /// Episodes in one batch must share a length.
  UpdateStats update_on(const std::vector<const EpisodeRecord*>& batch);

  ReplayBuffer<EpisodeRecord>& buffer() { return buffer_; }
  nn::Lstm& actor_lstm() { return a_lstm_; }
  nn::Mlp& actor_head() { return a_head_; }
  nn::Lstm& critic_lstm() { return c_lstm_; }
  nn::Mlp& critic_head() { return c_head_; }
  nn::Lstm& target_actor_lstm() { return a_lstm_t_; }
  nn::Mlp& target_actor_head() { return a_head_t_; }
  nn::Lstm& target_critic_lstm() { return c_lstm_t_; }
  nn::Mlp& target_critic_head() { return c_head_t_; }
  /// Copies online parameters into the targets.
  void sync_targets();

 private:
  nn::Lstm a_lstm_, c_lstm_, a_lstm_t_, c_lstm_t_;
  nn::Mlp a_head_, c_head_, a_head_t_, c_head_t_;
  nn::Adam a_lstm_opt_, a_head_opt_, c_lstm_opt_, c_head_opt_;
  ReplayBuffer<EpisodeRecord> buffer_;

  // acting state
  nn::Lstm::State state_;
  std::vector<double> prev_action_;
  EpisodeRecord current_;
  std::vector<double> tail_;  // latest next observation
};

}  // namespace slicing
