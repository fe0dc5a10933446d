#include "slicing/agents/ddpg.hpp"

namespace slicing {

using nn::Mat;

std::vector<std::size_t> layer_sizes(std::size_t in, std::size_t out, const AgentConfig& cfg) {
  std::vector<std::size_t> s{in};
  for (std::size_t l = 0; l < cfg.hidden_layers; ++l) s.push_back(cfg.width);
  s.push_back(out);
  return s;
}

DdpgAgent::DdpgAgent(std::size_t obs_dim, std::size_t act_dim, const AgentConfig& cfg, std::uint64_t seed)
    : Agent(obs_dim, act_dim, cfg, seed), buffer_(cfg.buffer_capacity) {
  actor_ = nn::Mlp(layer_sizes(obs_dim, act_dim, cfg_), nn::Activation::Tanh, rng_, 1e-3);
  critic_ = nn::Mlp(layer_sizes(obs_dim + act_dim, 1, cfg_), nn::Activation::Identity, rng_);
  actor_t_ = actor_;
  critic_t_ = critic_;
  actor_opt_ = nn::Adam(actor_.params().size());
  critic_opt_ = nn::Adam(critic_.params().size());
}

std::vector<double> DdpgAgent::act(const std::vector<double>& obs, bool explore) {
  const Mat a = actor_.predict(nn::ConstMatMap(obs.data(), Eigen::Index(obs.size()), 1));
  std::vector<double> out(a.data(), a.data() + a.size());
  if (explore && noise_scale() > 0.0) {
    std::normal_distribution<double> n(0.0, noise_scale());
    for (double& x : out) x += n(rng_);
  }
  return clamp_action(std::move(out));
}

void DdpgAgent::observe(const std::vector<double>& obs, const std::vector<double>& action, double reward,
                        const std::vector<double>& next_obs) {
  buffer_.push(Transition{obs, action, reward, next_obs});
  episode_rewards_.push_back(reward);
  ++steps_;
  if (steps_ < cfg_.warmup_steps) return;
  for (std::size_t i = 0; i < cfg_.updates_per_step; ++i) last_ = update();
}

UpdateStats DdpgAgent::update() {
  if (buffer_.size() < cfg_.batch) return UpdateStats{false, "insufficient samples"};
  return update_on(buffer_.sample(cfg_.batch, rng_));
}

UpdateStats DdpgAgent::update_on(const std::vector<const Transition*>& batch) {
  UpdateStats st;
  if (batch.empty()) return UpdateStats{false, "insufficient samples"};
  const double n = double(batch.size());
  std::vector<const std::vector<double>*> s, a, s2;
  Mat r(1, Eigen::Index(batch.size()));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    s.push_back(&batch[i]->s);
    a.push_back(&batch[i]->a);
    s2.push_back(&batch[i]->s2);
    r(0, Eigen::Index(i)) = norm_.normalize(batch[i]->r);
  }
  const Mat S = stack_columns(s), A = stack_columns(a), S2 = stack_columns(s2);

  // critic: y = r + gamma Q'(s', mu'(s'))
  const Mat y = r + cfg_.gamma * critic_t_.predict(vcat(S2, actor_t_.predict(S2)));
  critic_.zero_grad();
  const Mat q = critic_.forward(vcat(S, A));
  const Mat diff = q - y;
  critic_.backward(2.0 * diff / n);
  critic_opt_.step(critic_.params(), critic_.grads(), critic_lr());
  st.critic_loss = diff.squaredNorm() / n;
  st.q_mean = q.mean();

  // actor: ascend Q(s, mu(s))
  actor_.zero_grad();
  const Mat mu = actor_.forward(S);
  critic_.zero_grad();
  const Mat q_pi = critic_.forward(vcat(S, mu));
  const Mat dsa = critic_.backward(Mat::Constant(1, q_pi.cols(), -1.0 / n));
  actor_.backward(dsa.bottomRows(Eigen::Index(act_dim_)));
  actor_opt_.step(actor_.params(), actor_.grads(), actor_lr());
  st.actor_loss = -q_pi.mean();

  nn::soft_update(actor_t_.params(), actor_.params(), cfg_.tau);
  nn::soft_update(critic_t_.params(), critic_.params(), cfg_.tau);
  nn::require_finite(critic_.params(), "ddpg critic");
  nn::require_finite(actor_.params(), "ddpg actor");
  st.updated = true;
  st.status = "ok";
  return st;
}

nn::Checkpoint DdpgAgent::checkpoint() const {
  return {{"actor", {actor_.shape(), actor_.params()}},
          {"critic", {critic_.shape(), critic_.params()}},
          {"target_actor", {actor_t_.shape(), actor_t_.params()}},
          {"target_critic", {critic_t_.shape(), critic_t_.params()}}};
}

void DdpgAgent::restore(const nn::Checkpoint& ck) {
  nn::restore(ck, "actor", actor_.shape(), actor_.params());
  nn::restore(ck, "critic", critic_.shape(), critic_.params());
  nn::restore(ck, "target_actor", actor_t_.shape(), actor_t_.params());
  nn::restore(ck, "target_critic", critic_t_.shape(), critic_t_.params());
}

}  // namespace slicing
