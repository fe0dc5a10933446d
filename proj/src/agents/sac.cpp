#include "slicing/agents/sac.hpp"

#include <cmath>
#include <numbers>

#include "slicing/agents/ddpg.hpp"

namespace slicing {

using nn::Mat;

namespace {
constexpr double kLogStdMin = -20.0;
constexpr double kLogStdMax = 2.0;
const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

}  // namespace

SacAgent::SacAgent(std::size_t obs_dim, std::size_t act_dim, const AgentConfig& cfg, std::uint64_t seed)
    : Agent(obs_dim, act_dim, cfg, seed), buffer_(cfg.buffer_capacity) {
  actor_ = nn::Mlp(layer_sizes(obs_dim, 2 * act_dim, cfg_), nn::Activation::Identity, rng_, 1e-3);
  q1_ = nn::Mlp(layer_sizes(obs_dim + act_dim, 1, cfg_), nn::Activation::Identity, rng_);
  q2_ = nn::Mlp(layer_sizes(obs_dim + act_dim, 1, cfg_), nn::Activation::Identity, rng_);
  q1_t_ = q1_;
  q2_t_ = q2_;
  actor_opt_ = nn::Adam(actor_.params().size());
  q1_opt_ = nn::Adam(q1_.params().size());
  q2_opt_ = nn::Adam(q2_.params().size());
  alpha_opt_ = nn::Adam(1);
  log_alpha_ = {std::log(std::max(cfg_.sac_init_temperature, 1e-300))};
}

double SacAgent::temperature() const {
  return cfg_.sac_auto_temperature ? std::exp(log_alpha_[0]) : cfg_.sac_init_temperature;
}

double SacAgent::target_entropy() const { return cfg_.sac_target_entropy_per_dim * double(act_dim_); }

PolicySample SacAgent::sample_from(const Mat& head) {
  const auto A = Eigen::Index(act_dim_);
  const Eigen::Index B = head.cols();
  PolicySample p;
  const Mat mean = head.topRows(A);
  const Mat raw = head.bottomRows(A);
  p.log_std = raw.cwiseMax(kLogStdMin).cwiseMin(kLogStdMax);
  p.clamped = ((raw.array() < kLogStdMin) || (raw.array() > kLogStdMax)).cast<double>().matrix();
  p.eps.resize(A, B);
  std::normal_distribution<double> n(0.0, 1.0);
  for (Eigen::Index i = 0; i < p.eps.size(); ++i) p.eps.data()[i] = n(rng_);
  p.u = mean + (p.log_std.array().exp() * p.eps.array()).matrix();
  p.action = p.u.array().tanh().matrix();
  p.gauss_logp = (-0.5 * p.eps.array().square() - p.log_std.array() - kHalfLog2Pi).colwise().sum().matrix();
  // log(1 - tanh(u)^2) = 2 (ln 2 - u - softplus(-2u)), stable for large |u|
  const Eigen::ArrayXXd x = -2.0 * p.u.array();
  const Eigen::ArrayXXd softplus = x.max(0.0) + (-x.abs()).exp().log1p();
  p.logp = p.gauss_logp - (2.0 * (std::numbers::ln2 - p.u.array() - softplus)).colwise().sum().matrix();
  return p;
}

PolicySample SacAgent::sample_policy(const Mat& obs) { return sample_from(actor_.predict(obs)); }

std::vector<double> SacAgent::act(const std::vector<double>& obs, bool explore) {
  const Mat head = actor_.predict(nn::ConstMatMap(obs.data(), Eigen::Index(obs.size()), 1));
  Mat a;
  if (explore) a = sample_from(head).action;
  else a = head.topRows(Eigen::Index(act_dim_)).array().tanh().matrix();
  return clamp_action(std::vector<double>(a.data(), a.data() + a.size()));
}

void SacAgent::observe(const std::vector<double>& obs, const std::vector<double>& action, double reward,
                       const std::vector<double>& next_obs) {
  buffer_.push(Transition{obs, action, reward, next_obs});
  episode_rewards_.push_back(reward);
  ++steps_;
  if (steps_ < cfg_.warmup_steps) return;
  for (std::size_t i = 0; i < cfg_.updates_per_step; ++i) last_ = update();
}

UpdateStats SacAgent::update() {
  if (buffer_.size() < cfg_.batch) return UpdateStats{false, "insufficient samples"};
  return update_on(buffer_.sample(cfg_.batch, rng_));
}

UpdateStats SacAgent::update_on(const std::vector<const Transition*>& batch) {
  if (batch.empty()) return UpdateStats{false, "insufficient samples"};
  UpdateStats st;
  const double n = double(batch.size());
  const auto A = Eigen::Index(act_dim_);
  std::vector<const std::vector<double>*> s, a, s2;
  Mat r(1, Eigen::Index(batch.size()));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    s.push_back(&batch[i]->s);
    a.push_back(&batch[i]->a);
    s2.push_back(&batch[i]->s2);
    r(0, Eigen::Index(i)) = norm_.normalize(batch[i]->r);
  }
  const Mat S = stack_columns(s), Act = stack_columns(a), S2 = stack_columns(s2);
  const double alpha = temperature();

  // soft target: r + gamma (min Q'(s', a') - alpha log pi(a'|s'))
  const PolicySample next = sample_policy(S2);
  const Mat sa2 = vcat(S2, next.action);
  const Mat t1 = q1_t_.predict(sa2), t2 = q2_t_.predict(sa2);
  const Mat y = r + cfg_.gamma * (t1.cwiseMin(t2) - alpha * next.logp);

  const Mat sa = vcat(S, Act);
  double closs = 0.0, qmean = 0.0;
  for (int i = 0; i < 2; ++i) {
    nn::Mlp& q = i == 0 ? q1_ : q2_;
    q.zero_grad();
    const Mat diff = q.forward(sa) - y;
    q.backward(2.0 * diff / n);
    (i == 0 ? q1_opt_ : q2_opt_).step(q.params(), q.grads(), critic_lr());
    closs += 0.5 * diff.squaredNorm() / n;
    qmean += 0.5 * (diff + y).mean();
  }

  // policy: minimize alpha log pi - min(Q1, Q2)
  actor_.zero_grad();
  const Mat head = actor_.forward(S);
  const PolicySample cur = sample_from(head);
  const Mat sa_pi = vcat(S, cur.action);
  q1_.zero_grad();
  q2_.zero_grad();
  const Mat qa = q1_.forward(sa_pi);
  const Mat qb = q2_.forward(sa_pi);
  Mat up1 = Mat::Zero(1, qa.cols()), up2 = Mat::Zero(1, qa.cols());
  std::vector<int> used(std::size_t(qa.cols()));
  for (Eigen::Index b = 0; b < qa.cols(); ++b) {
    used[std::size_t(b)] = qb(0, b) < qa(0, b) ? 1 : 0;
    (used[std::size_t(b)] ? up2 : up1)(0, b) = 1.0;
  }
  const Mat dq_da = (q1_.backward(up1) + q2_.backward(up2)).bottomRows(A);
  q1_.zero_grad();
  q2_.zero_grad();

  const Mat one_minus_a2 = (1.0 - cur.action.array().square()).matrix();
  const Mat stdv = cur.log_std.array().exp().matrix();
  const Mat dq_du = dq_da.cwiseProduct(one_minus_a2);
  Mat dhead(2 * A, head.cols());
  dhead.topRows(A) = (alpha * 2.0 * cur.action - dq_du) / n;
  const Mat se = stdv.cwiseProduct(cur.eps);
  Mat dls = (alpha * (Mat::Constant(A, head.cols(), -1.0) + 2.0 * cur.action.cwiseProduct(se)) -
             dq_du.cwiseProduct(se)) / n;
  dls = dls.cwiseProduct((1.0 - cur.clamped.array()).matrix());
  dhead.bottomRows(A) = dls;
  actor_.backward(dhead);
  actor_opt_.step(actor_.params(), actor_.grads(), actor_lr());
  const Mat qmin = qa.cwiseMin(qb);
  st.actor_loss = (alpha * cur.logp - qmin).mean();

  if (cfg_.sac_auto_temperature) {
    const double g = -(cur.logp.array() + target_entropy()).mean();
    alpha_opt_.step(log_alpha_, std::vector<double>{g}, cfg_.temperature_lr);
  }

  if (trace_) {
    trace_->q1_next = t1;
    trace_->q2_next = t2;
    trace_->y = y;
    trace_->logp_next = next.logp;
    trace_->reward = r;
    trace_->q1_pi = qa;
    trace_->q2_pi = qb;
    trace_->actor_critic_used = used;
    trace_->alpha = alpha;
  }

  nn::soft_update(q1_t_.params(), q1_.params(), cfg_.tau);
  nn::soft_update(q2_t_.params(), q2_.params(), cfg_.tau);
  nn::require_finite(q1_.params(), "sac critic");
  nn::require_finite(q2_.params(), "sac critic");
  nn::require_finite(actor_.params(), "sac policy");
  st.updated = true;
  st.status = "ok";
  st.critic_loss = closs;
  st.q_mean = qmean;
  st.temperature = temperature();
  return st;
}

nn::Checkpoint SacAgent::checkpoint() const {
  return {{"policy", {actor_.shape(), actor_.params()}},
          {"q1", {q1_.shape(), q1_.params()}},
          {"q2", {q2_.shape(), q2_.params()}},
          {"target_q1", {q1_t_.shape(), q1_t_.params()}},
          {"target_q2", {q2_t_.shape(), q2_t_.params()}},
          {"log_alpha", {"scalar", log_alpha_}}};
}

void SacAgent::restore(const nn::Checkpoint& ck) {
  nn::restore(ck, "policy", actor_.shape(), actor_.params());
  nn::restore(ck, "q1", q1_.shape(), q1_.params());
  nn::restore(ck, "q2", q2_.shape(), q2_.params());
  nn::restore(ck, "target_q1", q1_t_.shape(), q1_t_.params());
  nn::restore(ck, "target_q2", q2_t_.shape(), q2_t_.params());
  nn::restore(ck, "log_alpha", "scalar", log_alpha_);
}

}  // namespace slicing
