#include "slicing/agents/agent.hpp"

#include <algorithm>
#include <stdexcept>

#include "slicing/agents/ddpg.hpp"
#include "slicing/agents/rdpg.hpp"
#include "slicing/agents/sac.hpp"
#include "slicing/nn/optim.hpp"

namespace slicing {

Agent::Agent(std::size_t obs_dim, std::size_t act_dim, const AgentConfig& cfg, std::uint64_t seed)
    : obs_dim_(obs_dim),
      act_dim_(act_dim),
      cfg_(cfg),
      rng_(seed),
      norm_(cfg.reward_window_episodes, cfg.normalize_rewards) {
  cfg_.validate();
  if (obs_dim == 0 || act_dim == 0) throw std::invalid_argument("agent dimensions must be positive");
}

void Agent::begin_episode(std::size_t episode) {
  episode_ = episode;
  episode_rewards_.clear();
}

void Agent::end_episode() { norm_.add_episode(episode_rewards_); }

double Agent::actor_lr() const { return nn::inverse_time_lr(cfg_.actor_lr, cfg_.lr_decay, double(episode_)); }
double Agent::critic_lr() const { return nn::inverse_time_lr(cfg_.critic_lr, cfg_.lr_decay, double(episode_)); }
double Agent::noise_scale() const {
  return nn::inverse_time_lr(cfg_.exploration_noise, cfg_.lr_decay, double(episode_));
}

nn::Mat stack_columns(const std::vector<const std::vector<double>*>& cols) {
  if (cols.empty()) return {};
  const auto rows = static_cast<Eigen::Index>(cols.front()->size());
  nn::Mat m(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (static_cast<Eigen::Index>(cols[c]->size()) != rows) throw std::invalid_argument("ragged batch");
    m.col(Eigen::Index(c)) = nn::ConstVecMap(cols[c]->data(), rows);
  }
  return m;
}

nn::Mat vcat(const nn::Mat& top, const nn::Mat& bottom) {
  nn::Mat m(top.rows() + bottom.rows(), top.cols());
  m << top, bottom;
  return m;
}

std::vector<double> clamp_action(std::vector<double> a) {
  for (double& x : a) x = std::clamp(x, -1.0, 1.0);
  return a;
}

std::unique_ptr<Agent> make_agent(const std::string& kind, std::size_t obs_dim, std::size_t act_dim,
                                  const AgentConfig& cfg, std::uint64_t seed) {
  if (kind == "ddpg") return std::make_unique<DdpgAgent>(obs_dim, act_dim, cfg, seed);
  if (kind == "sac") return std::make_unique<SacAgent>(obs_dim, act_dim, cfg, seed);
  if (kind == "rdpg") return std::make_unique<RdpgAgent>(obs_dim, act_dim, cfg, seed);
  throw std::invalid_argument("unknown agent '" + kind + "'");
}

}  // namespace slicing
