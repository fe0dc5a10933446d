#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "slicing/agents/replay.hpp"
#include "slicing/config.hpp"
#include "slicing/nn/checkpoint.hpp"
#include "slicing/nn/tensor.hpp"

namespace slicing {

struct UpdateStats {
  bool updated = false;
  std::string status;  // "ok" or why nothing happened
  double critic_loss = 0.0;
  double actor_loss = 0.0;
  double q_mean = 0.0;
  double temperature = 0.0;
};

/// Common lifecycle of the learned allocators.
class Agent {
 public:
  Agent(std::size_t obs_dim, std::size_t act_dim, const AgentConfig& cfg, std::uint64_t seed);
  virtual ~Agent() = default;

  virtual std::string name() const = 0;
  /// Applies the learning-rate schedule and clears any recurrent state.
  virtual void begin_episode(std::size_t episode);
  virtual std::vector<double> act(const std::vector<double>& obs, bool explore) = 0;
  /// Records one transition and runs the configured number of updates.
  virtual void observe(const std::vector<double>& obs, const std::vector<double>& action, double reward,
                       const std::vector<double>& next_obs) = 0;
  virtual void end_episode();

  virtual nn::Checkpoint checkpoint() const = 0;
  virtual void restore(const nn::Checkpoint& ck) = 0;

  const AgentConfig& config() const { return cfg_; }
  std::size_t observation_dim() const { return obs_dim_; }
  std::size_t action_dim() const { return act_dim_; }
  const RewardNormalizer& normalizer() const { return norm_; }
  const UpdateStats& last_update() const { return last_; }

  double actor_lr() const;
  double critic_lr() const;
  double noise_scale() const;

 protected:
  std::size_t obs_dim_, act_dim_;
  AgentConfig cfg_;
  std::mt19937_64 rng_;
  RewardNormalizer norm_;
  std::vector<double> episode_rewards_;
  std::size_t episode_ = 0;
  UpdateStats last_;
};

/// Column-stacks equally sized vectors.
nn::Mat stack_columns(const std::vector<const std::vector<double>*>& cols);
/// Vertically concatenates two blocks with the same column count.
nn::Mat vcat(const nn::Mat& top, const nn::Mat& bottom);
std::vector<double> clamp_action(std::vector<double> a);

/// "ddpg", "sac" or "rdpg".
std::unique_ptr<Agent> make_agent(const std::string& kind, std::size_t obs_dim, std::size_t act_dim,
                                  const AgentConfig& cfg, std::uint64_t seed);

}  // namespace slicing
