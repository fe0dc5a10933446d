#include "slicing/agents/rdpg.hpp"

#include <stdexcept>

#include "slicing/agents/ddpg.hpp"

namespace slicing {

using nn::Mat;

namespace {

// Time blocks side by side: column t*N + n holds episode n at step t.
Mat hstack(const std::vector<Mat>& blocks, std::size_t from, std::size_t to) {
  const Eigen::Index N = blocks[from].cols();
  Mat m(blocks[from].rows(), N * Eigen::Index(to - from));
  for (std::size_t t = from; t < to; ++t) m.middleCols(Eigen::Index(t - from) * N, N) = blocks[t];
  return m;
}

std::vector<Mat> hsplit(const Mat& m, Eigen::Index rows, std::size_t steps) {
  const Eigen::Index N = m.cols() / Eigen::Index(steps);
  std::vector<Mat> out(steps);
  for (std::size_t t = 0; t < steps; ++t) out[t] = m.block(0, Eigen::Index(t) * N, rows, N);
  return out;
}

}  // namespace

RdpgAgent::RdpgAgent(std::size_t obs_dim, std::size_t act_dim, const AgentConfig& cfg, std::uint64_t seed)
    : Agent(obs_dim, act_dim, cfg, seed), buffer_(std::max<std::size_t>(1, cfg.buffer_capacity / 50)) {
  const std::size_t x = obs_dim + act_dim, H = cfg_.lstm_hidden;
  a_lstm_ = nn::Lstm(x, H, rng_);
  a_head_ = nn::Mlp(layer_sizes(H + x, act_dim, cfg_), nn::Activation::Tanh, rng_, 1e-3);
  c_lstm_ = nn::Lstm(x, H, rng_);
  c_head_ = nn::Mlp(layer_sizes(H + x + act_dim, 1, cfg_), nn::Activation::Identity, rng_);
  sync_targets();
  a_lstm_opt_ = nn::Adam(a_lstm_.params().size());
  a_head_opt_ = nn::Adam(a_head_.params().size());
  c_lstm_opt_ = nn::Adam(c_lstm_.params().size());
  c_head_opt_ = nn::Adam(c_head_.params().size());
  begin_episode(0);
}

void RdpgAgent::sync_targets() {
  a_lstm_t_ = a_lstm_;
  a_head_t_ = a_head_;
  c_lstm_t_ = c_lstm_;
  c_head_t_ = c_head_;
}

void RdpgAgent::begin_episode(std::size_t episode) {
  Agent::begin_episode(episode);
  state_ = a_lstm_.zero_state(1);
  prev_action_.assign(act_dim_, 0.0);
  current_ = EpisodeRecord{};
}

std::vector<double> RdpgAgent::act(const std::vector<double>& obs, bool explore) {
  Mat x(Eigen::Index(obs_dim_ + act_dim_), 1);
  x << nn::ConstVecMap(obs.data(), Eigen::Index(obs_dim_)), nn::ConstVecMap(prev_action_.data(), Eigen::Index(act_dim_));
  const Mat h = a_lstm_.step(x, state_);
  const Mat a = a_head_.predict(vcat(h, x));
  std::vector<double> out(a.data(), a.data() + a.size());
  if (explore && noise_scale() > 0.0) {
    std::normal_distribution<double> n(0.0, noise_scale());
    for (double& v : out) v += n(rng_);
  }
  out = clamp_action(std::move(out));
  prev_action_ = out;
  return out;
}

void RdpgAgent::observe(const std::vector<double>& obs, const std::vector<double>& action, double reward,
                        const std::vector<double>& next_obs) {
  prev_action_ = action;
  current_.obs.push_back(obs);
  current_.actions.push_back(action);
  current_.rewards.push_back(reward);
  episode_rewards_.push_back(reward);
  tail_ = next_obs;
}

void RdpgAgent::end_episode() {
  Agent::end_episode();
  if (!current_.rewards.empty()) {
    current_.obs.push_back(tail_);
    buffer_.push(std::move(current_));
  }
  current_ = EpisodeRecord{};
  for (std::size_t i = 0; i < cfg_.rdpg_updates_per_episode; ++i) last_ = update();
}

UpdateStats RdpgAgent::update() {
  if (buffer_.size() < cfg_.rdpg_episode_batch) return UpdateStats{false, "insufficient episodes"};
  return update_on(buffer_.sample(cfg_.rdpg_episode_batch, rng_));
}

UpdateStats RdpgAgent::update_on(const std::vector<const EpisodeRecord*>& batch) {
  if (batch.empty()) return UpdateStats{false, "insufficient episodes"};
  const std::size_t T = batch.front()->length();
  for (const auto* e : batch)
    if (e->length() != T || e->obs.size() != T + 1 || e->actions.size() != T)
      throw std::invalid_argument("episodes in an RDPG batch must share one length");
  if (T == 0) return UpdateStats{false, "empty episodes"};
  const auto N = Eigen::Index(batch.size());
  const auto O = Eigen::Index(obs_dim_), A = Eigen::Index(act_dim_), H = Eigen::Index(cfg_.lstm_hidden);
  const double count = double(N) * double(T);

  // x_t = [o_t; a_{t-1}] for t = 0..T, plus a_t and r_t for t < T
  std::vector<Mat> xs(T + 1), acts(T);
  Mat r(1, N * Eigen::Index(T));
  for (std::size_t t = 0; t <= T; ++t) {
    xs[t].resize(O + A, N);
    for (Eigen::Index n = 0; n < N; ++n) {
      const auto* e = batch[std::size_t(n)];
      xs[t].col(n).head(O) = nn::ConstVecMap(e->obs[t].data(), O);
      if (t == 0) xs[t].col(n).tail(A).setZero();
      else xs[t].col(n).tail(A) = nn::ConstVecMap(e->actions[t - 1].data(), A);
      if (t < T) r(0, Eigen::Index(t) * N + n) = norm_.normalize(e->rewards[t]);
    }
  }
  for (std::size_t t = 0; t < T; ++t) acts[t] = xs[t + 1].bottomRows(A);

  // targets over the full history including the bootstrap step
  const auto& ht_a = a_lstm_t_.forward(xs);
  const Mat xs_next = hstack(xs, 1, T + 1);
  const Mat mu_next = a_head_t_.predict(vcat(hstack(ht_a, 1, T + 1), xs_next));
  const auto& ht_c = c_lstm_t_.forward(xs);
  const Mat q_next = c_head_t_.predict(vcat(vcat(hstack(ht_c, 1, T + 1), xs_next), mu_next));
  const Mat y = r + cfg_.gamma * q_next;

  const std::vector<Mat> xs_in(xs.begin(), xs.begin() + Eigen::Index(T));
  const Mat X = hstack(xs, 0, T), Acts = hstack(acts, 0, T);

  UpdateStats st;
  // critic
  c_lstm_.zero_grad();
  c_head_.zero_grad();
  const Mat hc = hstack(c_lstm_.forward(xs_in), 0, T);
  const Mat q = c_head_.forward(vcat(vcat(hc, X), Acts));
  const Mat diff = q - y;
  const Mat dz = c_head_.backward(2.0 * diff / count);
  c_lstm_.backward(hsplit(dz, H, T));
  c_head_opt_.step(c_head_.params(), c_head_.grads(), critic_lr());
  c_lstm_opt_.step(c_lstm_.params(), c_lstm_.grads(), critic_lr());
  st.critic_loss = diff.squaredNorm() / count;
  st.q_mean = q.mean();

  // actor through the updated critic
  a_lstm_.zero_grad();
  a_head_.zero_grad();
  const Mat ha = hstack(a_lstm_.forward(xs_in), 0, T);
  const Mat mu = a_head_.forward(vcat(ha, X));
  const Mat hc2 = hstack(c_lstm_.forward(xs_in), 0, T);
  const Mat q_pi = c_head_.forward(vcat(vcat(hc2, X), mu));
  const Mat dzc = c_head_.backward(Mat::Constant(1, q_pi.cols(), -1.0 / count));
  c_head_.zero_grad();
  c_lstm_.zero_grad();
  const Mat dza = a_head_.backward(dzc.bottomRows(A));
  a_lstm_.backward(hsplit(dza, H, T));
  a_head_opt_.step(a_head_.params(), a_head_.grads(), actor_lr());
  a_lstm_opt_.step(a_lstm_.params(), a_lstm_.grads(), actor_lr());
  st.actor_loss = -q_pi.mean();

  nn::soft_update(a_lstm_t_.params(), a_lstm_.params(), cfg_.tau);
  nn::soft_update(a_head_t_.params(), a_head_.params(), cfg_.tau);
  nn::soft_update(c_lstm_t_.params(), c_lstm_.params(), cfg_.tau);
  nn::soft_update(c_head_t_.params(), c_head_.params(), cfg_.tau);
  for (const auto* p : {&a_lstm_.params(), &a_head_.params(), &c_lstm_.params(), &c_head_.params()})
    nn::require_finite(*p, "rdpg parameters");
  st.updated = true;
  st.status = "ok";
  return st;
}

nn::Checkpoint RdpgAgent::checkpoint() const {
  return {{"actor_lstm", {a_lstm_.shape(), a_lstm_.params()}},
          {"actor_head", {a_head_.shape(), a_head_.params()}},
          {"critic_lstm", {c_lstm_.shape(), c_lstm_.params()}},
          {"critic_head", {c_head_.shape(), c_head_.params()}},
          {"target_actor_lstm", {a_lstm_t_.shape(), a_lstm_t_.params()}},
          {"target_actor_head", {a_head_t_.shape(), a_head_t_.params()}},
          {"target_critic_lstm", {c_lstm_t_.shape(), c_lstm_t_.params()}},
          {"target_critic_head", {c_head_t_.shape(), c_head_t_.params()}}};
}

void RdpgAgent::restore(const nn::Checkpoint& ck) {
  nn::restore(ck, "actor_lstm", a_lstm_.shape(), a_lstm_.params());
  nn::restore(ck, "actor_head", a_head_.shape(), a_head_.params());
  nn::restore(ck, "critic_lstm", c_lstm_.shape(), c_lstm_.params());
  nn::restore(ck, "critic_head", c_head_.shape(), c_head_.params());
  nn::restore(ck, "target_actor_lstm", a_lstm_t_.shape(), a_lstm_t_.params());
  nn::restore(ck, "target_actor_head", a_head_t_.shape(), a_head_t_.params());
  nn::restore(ck, "target_critic_lstm", c_lstm_t_.shape(), c_lstm_t_.params());
  nn::restore(ck, "target_critic_head", c_head_t_.shape(), c_head_t_.params());
}

}  // namespace slicing
