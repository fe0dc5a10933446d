#pragma once

#include "slicing/agents/agent.hpp"
#include "slicing/nn/mlp.hpp"
#include "slicing/nn/optim.hpp"

namespace slicing {

/// Values seen inside one SAC update, for structural inspection.
struct SacTrace {
  nn::Mat q1_next, q2_next, y;        // target side
  nn::Mat logp_next, reward;
  nn::Mat q1_pi, q2_pi;               // actor side
  std::vector<int> actor_critic_used;  // 0 or 1 per sample
  double alpha = 0.0;
};

struct PolicySample {
  nn::Mat action;      // tanh(u)
  nn::Mat u, eps;      // pre-squash sample and its noise
  nn::Mat log_std;     // clamped
  nn::Mat logp;        // 1 x batch, with the squashing correction
  nn::Mat gauss_logp;  // 1 x batch, Gaussian part only
  nn::Mat clamped;     // 1 where the raw log-std was clipped
};

/// Soft actor-critic: twin critics, tanh-squashed Gaussian policy,
/// optional automatic temperature.
class SacAgent : public Agent {
 public:
  SacAgent(std::size_t obs_dim, std::size_t act_dim, const AgentConfig& cfg, std::uint64_t seed);

  std::string name() const override { return "sac"; }
  std::vector<double> act(const std::vector<double>& obs, bool explore) override;
  void observe(const std::vector<double>& obs, const std::vector<double>& action, double reward,
               const std::vector<double>& next_obs) override;
  nn::Checkpoint checkpoint() const override;
  void restore(const nn::Checkpoint& ck) override;

  UpdateStats update();
  UpdateStats update_on(const std::vector<const Transition*>& batch);

  /// Reparameterized samples for a batch of observations (one per column).
  PolicySample sample_policy(const nn::Mat& obs);
  double temperature() const;
  double target_entropy() const;

  void set_trace(SacTrace* t) { trace_ = t; }
  ReplayBuffer<Transition>& buffer() { return buffer_; }
  nn::Mlp& policy() { return actor_; }
  nn::Mlp& critic(int i) { return i == 0 ? q1_ : q2_; }
  nn::Mlp& target_critic(int i) { return i == 0 ? q1_t_ : q2_t_; }

 private:
  PolicySample sample_from(const nn::Mat& head_out);

  nn::Mlp actor_, q1_, q2_, q1_t_, q2_t_;
  nn::Adam actor_opt_, q1_opt_, q2_opt_, alpha_opt_;
  nn::Buffer log_alpha_;
  ReplayBuffer<Transition> buffer_;
  std::size_t steps_ = 0;
  SacTrace* trace_ = nullptr;
};

}  // namespace slicing
