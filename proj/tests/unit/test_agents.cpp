#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "../support/tasks.hpp"
#include "fixtures.hpp"
#include "slicing/agents/ddpg.hpp"
#include "slicing/agents/greedy.hpp"
#include "slicing/agents/rdpg.hpp"
#include "slicing/agents/sac.hpp"
#include "slicing/agents/trainer.hpp"
#include "slicing/config.hpp"

using namespace slicing;
using nn::Mat;

namespace {

AgentConfig small_config() {
  AgentConfig c;
  c.width = 32;
  c.hidden_layers = 2;
  c.lstm_hidden = 16;
  c.batch = 16;
  c.buffer_capacity = 5000;
  c.actor_lr = 1e-3;
  c.critic_lr = 2e-3;
  c.tau = 0.01;
  c.normalize_rewards = false;
  return c;
}

double q_at(nn::Mlp& critic, const std::vector<double>& s, const std::vector<double>& a) {
  Mat x(Eigen::Index(s.size() + a.size()), 1);
  for (std::size_t i = 0; i < s.size(); ++i) x(Eigen::Index(i), 0) = s[i];
  for (std::size_t i = 0; i < a.size(); ++i) x(Eigen::Index(s.size() + i), 0) = a[i];
  return critic.predict(x)(0, 0);
}

Transition bandit_transition(double a = 0.0) { return Transition{{1.0}, {a}, 1.0, {1.0}}; }

}  // namespace

TEST_CASE("replay buffer is FIFO and evicts the oldest past capacity") {
  ReplayBuffer<int> b(3);
  for (int i = 0; i < 3; ++i) b.push(i);
  CHECK(b.size() == 3);
  CHECK(b.at(0) == 0);
  b.push(3);
  CHECK(b.size() == 3);
  CHECK(b.at(0) == 1);
  CHECK(b.at(2) == 3);
  std::mt19937_64 rng(1);
  for (const int* p : b.sample(50, rng)) CHECK((*p >= 1 && *p <= 3));
  ReplayBuffer<int> empty(2);
  CHECK_THROWS(empty.sample(1, rng));
  CHECK_THROWS(ReplayBuffer<int>(0));
}

TEST_CASE("reward normalizer keeps statistics over a window of episodes") {
  RewardNormalizer n(2);
  n.add_episode({1.0, 3.0});
  CHECK(n.mean() == doctest::Approx(2.0));
  CHECK(n.stddev() == doctest::Approx(1.0));
  n.add_episode({5.0});
  n.add_episode({7.0, 9.0});  // first episode leaves the window
  CHECK(n.mean() == doctest::Approx(7.0));
  CHECK(n.normalize(7.0) == doctest::Approx(0.0));
  RewardNormalizer off(100, false);
  off.add_episode({10.0, 20.0});
  CHECK(off.normalize(3.0) == 3.0);
  RewardNormalizer flat;
  flat.add_episode({2.0, 2.0});
  CHECK(flat.normalize(3.0) == doctest::Approx(1.0));
}

TEST_CASE("ddpg critic learns a constant bandit reward") {
  AgentConfig c = small_config();
  c.gamma = 0.0;
  DdpgAgent agent(1, 1, c, 11);
  stub::Bandit task;
  TrainOptions opt;
  opt.episodes = 2000;
  opt.seed = 3;
  train(agent, task, opt);
  const auto a = agent.act({1.0}, false);
  CHECK(std::abs(q_at(agent.critic(), {1.0}, a) - 1.0) < 0.05);
}

TEST_CASE("updates on an empty or short buffer report insufficient samples") {
  AgentConfig c = small_config();
  DdpgAgent d(1, 1, c, 1);
  const nn::Buffer before = d.actor().params();
  auto st = d.update();
  CHECK_FALSE(st.updated);
  CHECK(st.status == "insufficient samples");
  CHECK(d.actor().params() == before);
  SacAgent s(1, 1, c, 1);
  CHECK(s.update().status == "insufficient samples");
  RdpgAgent r(1, 1, c, 1);
  CHECK(r.update().status == "insufficient episodes");
}

TEST_CASE("tau of one copies online networks into the targets") {
  AgentConfig c = small_config();
  c.tau = 1.0;
  DdpgAgent d(1, 1, c, 5);
  std::vector<Transition> ts;
  for (int i = 0; i < 8; ++i) ts.push_back(bandit_transition(0.1 * i - 0.4));
  std::vector<const Transition*> batch;
  for (auto& t : ts) batch.push_back(&t);
  REQUIRE(d.update_on(batch).updated);
  CHECK(d.target_actor().params() == d.actor().params());
  CHECK(d.target_critic().params() == d.critic().params());
}

TEST_CASE("soft targets move inside the segment between old target and online") {
  AgentConfig c = small_config();
  c.tau = 0.3;
  DdpgAgent d(2, 2, c, 9);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  std::vector<Transition> ts;
  for (int i = 0; i < 16; ++i) ts.push_back({{n(rng), n(rng)}, {0.5, -0.5}, n(rng), {n(rng), n(rng)}});
  std::vector<const Transition*> batch;
  for (auto& t : ts) batch.push_back(&t);
  for (int round = 0; round < 3; ++round) {
    const nn::Buffer old_t = d.target_critic().params();
    d.update_on(batch);
    const nn::Buffer& on = d.critic().params();
    const nn::Buffer& nt = d.target_critic().params();
    for (std::size_t i = 0; i < nt.size(); ++i) {
      CHECK(nt[i] >= std::min(old_t[i], on[i]) - 1e-15);
      CHECK(nt[i] <= std::max(old_t[i], on[i]) + 1e-15);
    }
  }
}

TEST_CASE("sac with zero temperature learns a constant bandit reward") {
  AgentConfig c = small_config();
  c.gamma = 0.0;
  c.sac_auto_temperature = false;
  c.sac_init_temperature = 0.0;
  SacAgent agent(1, 1, c, 12);
  stub::Bandit task;
  TrainOptions opt;
  opt.episodes = 2000;
  opt.seed = 4;
  train(agent, task, opt);
  CHECK(agent.temperature() == 0.0);
  const auto a = agent.act({1.0}, false);
  CHECK(std::abs(q_at(agent.critic(0), {1.0}, a) - 1.0) < 0.05);
  CHECK(std::abs(q_at(agent.critic(1), {1.0}, a) - 1.0) < 0.05);
}

TEST_CASE("sac policy entropy at initialization matches the Gaussian closed form") {
  AgentConfig c = small_config();
  const std::size_t A = 6;
  SacAgent agent(3, A, c, 21);
  Mat obs = Mat::Constant(3, 20000, 0.5);
  const PolicySample p = agent.sample_policy(obs);
  const double estimate = -p.gauss_logp.mean();
  const double analytic =
      double(A) * 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e) + p.log_std.col(0).sum();
  CHECK(std::abs(estimate - analytic) <= 0.1 * std::abs(analytic));
  CHECK(agent.target_entropy() == doctest::Approx(-double(A)));
}

TEST_CASE("sac targets and the policy step use the smaller critic") {
  AgentConfig c = small_config();
  SacAgent agent(2, 2, c, 8);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n;
  std::vector<Transition> ts;
  for (int i = 0; i < 32; ++i) ts.push_back({{n(rng), n(rng)}, {0.3, -0.2}, n(rng), {n(rng), n(rng)}});
  std::vector<const Transition*> batch;
  for (auto& t : ts) batch.push_back(&t);
  SacTrace tr;
  agent.set_trace(&tr);
  agent.update_on(batch);
  REQUIRE(tr.y.cols() == 32);
  for (Eigen::Index b = 0; b < 32; ++b) {
    const double m = std::min(tr.q1_next(0, b), tr.q2_next(0, b));
    CHECK(tr.y(0, b) == doctest::Approx(tr.reward(0, b) + c.gamma * (m - tr.alpha * tr.logp_next(0, b))));
    CHECK(tr.actor_critic_used[std::size_t(b)] == (tr.q2_pi(0, b) < tr.q1_pi(0, b) ? 1 : 0));
  }
  // shifting one critic far up or down decides which one the actor follows
  for (double shift : {100.0, -200.0}) {
    agent.critic(1).bias(agent.critic(1).layer_count() - 1)[0] += shift;
    agent.update_on(batch);
    for (int used : tr.actor_critic_used) CHECK(used == (shift > 0 ? 0 : 1));
  }
}

TEST_CASE("exploration noise has the configured scale and is absent at evaluation") {
  AgentConfig c = small_config();
  c.exploration_noise = 0.1;
  DdpgAgent agent(2, 1, c, 2);
  const std::vector<double> obs{0.2, -0.1};
  const double mu = agent.act(obs, false)[0];
  CHECK(agent.act(obs, false)[0] == mu);
  double s = 0.0, ss = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double e = agent.act(obs, true)[0] - mu;
    s += e;
    ss += e * e;
  }
  const double sd = std::sqrt(ss / n - (s / n) * (s / n));
  CHECK(std::abs(sd - 0.1) < 0.005);

  RdpgAgent r(2, 1, c, 2);
  r.begin_episode(0);
  const double r0 = r.act(obs, false)[0];
  r.begin_episode(0);
  CHECK(r.act(obs, false)[0] == r0);
}

TEST_CASE("critic learns faster than the actor by default") {
  const AgentConfig c;
  CHECK(c.critic_lr > c.actor_lr);
  const Config desk = preset("desk");
  CHECK(desk.agent.critic_lr > desk.agent.actor_lr);
}

TEST_CASE("rdpg on one-step episodes with a silent memory reduces to ddpg") {
  AgentConfig c = small_config();
  c.gamma = 0.7;
  c.tau = 0.05;
  const std::size_t O = 3, A = 2, H = c.lstm_hidden;
  DdpgAgent d(O, A, c, 31);
  RdpgAgent r(O, A, c, 32);

  // h stays zero: no input weights and a closed candidate gate
  for (nn::Lstm* l : {&r.actor_lstm(), &r.critic_lstm()}) {
    l->weight().setZero();
    l->bias().segment(3 * Eigen::Index(H), Eigen::Index(H)).setZero();
  }
  // heads read only the observation (and action), with ddpg's weights
  auto graft = [&](nn::Mlp& head, nn::Mlp& flat) {
    for (std::size_t l = 0; l < flat.layer_count(); ++l) {
      if (l == 0) {
        auto W = head.weight(0);
        const auto F = flat.weight(0);
        W.setZero();
        W.middleCols(Eigen::Index(H), Eigen::Index(O)) = F.leftCols(Eigen::Index(O));
        if (F.cols() > Eigen::Index(O))
          W.rightCols(F.cols() - Eigen::Index(O)) = F.rightCols(F.cols() - Eigen::Index(O));
      } else {
        head.weight(l) = flat.weight(l);
      }
      head.bias(l) = flat.bias(l);
    }
  };
  graft(r.actor_head(), d.actor());
  graft(r.critic_head(), d.critic());
  r.sync_targets();
  d.target_actor().params() = d.actor().params();
  d.target_critic().params() = d.critic().params();

  std::mt19937_64 rng(17);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Transition> ts;
  std::vector<EpisodeRecord> eps;
  for (int i = 0; i < 12; ++i) {
    Transition t{{n(rng), n(rng), n(rng)}, {u(rng), u(rng)}, n(rng), {n(rng), n(rng), n(rng)}};
    eps.push_back(EpisodeRecord{{t.s, t.s2}, {t.a}, {t.r}});
    ts.push_back(std::move(t));
  }
  std::vector<const Transition*> tb;
  std::vector<const EpisodeRecord*> eb;
  for (auto& t : ts) tb.push_back(&t);
  for (auto& e : eps) eb.push_back(&e);

  const nn::Buffer lstm_before = r.actor_lstm().params();
  for (int step = 0; step < 5; ++step) {
    const auto sd = d.update_on(tb);
    const auto sr = r.update_on(eb);
    CHECK(sr.critic_loss == doctest::Approx(sd.critic_loss).epsilon(1e-10));
    CHECK(sr.actor_loss == doctest::Approx(sd.actor_loss).epsilon(1e-10));
  }
  CHECK(r.actor_lstm().params() == lstm_before);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    r.begin_episode(0);
    const auto ar = r.act(ts[i].s, false);
    const auto ad = d.act(ts[i].s, false);
    for (std::size_t k = 0; k < A; ++k) CHECK(ar[k] == doctest::Approx(ad[k]).epsilon(1e-10));
  }
}

TEST_CASE("rdpg carries a cue across steps where ddpg cannot") {
  AgentConfig c = small_config();
  c.gamma = 0.9;
  c.rdpg_episode_batch = 16;
  c.rdpg_updates_per_episode = 4;
  c.exploration_noise = 0.3;
  stub::Recall task(5);

  auto final_reward = [&](Agent& agent) {
    double total = 0.0;
    const int n = 200;
    for (int i = 0; i < n; ++i) {
      const auto e = run_episode(agent, task, derive_seed(99, 0, std::uint64_t(i)), false, false);
      total += e.mean_reward * 5.0;
    }
    return total / n;
  };

  RdpgAgent r(1, 1, c, 41);
  DdpgAgent d(1, 1, c, 41);
  TrainOptions opt;
  opt.episodes = 1500;
  opt.seed = 5;
  train(r, task, opt);
  train(d, task, opt);
  const double rs = final_reward(r), ds = final_reward(d);
  MESSAGE("recall score rdpg=" << rs << " ddpg=" << ds);
  CHECK(rs > 0.5);
  CHECK(rs > ds + 0.3);
}

TEST_CASE("training is reproducible per seed and zero episodes give an empty curve") {
  AgentConfig c = small_config();
  for (const std::string kind : {"ddpg", "sac", "rdpg"}) {
    c.rdpg_episode_batch = 4;
    stub::Recall t1(3), t2(3);
    auto a1 = make_agent(kind, 1, 1, c, 7), a2 = make_agent(kind, 1, 1, c, 7);
    TrainOptions opt;
    opt.episodes = 40;
    opt.seed = 8;
    std::ostringstream csv1, csv2;
    opt.curve_csv = &csv1;
    const auto c1 = train(*a1, t1, opt);
    opt.curve_csv = &csv2;
    train(*a2, t2, opt);
    CHECK(c1.size() == 40);
    CHECK(csv1.str() == csv2.str());
    CHECK(csv1.str().rfind("episode,mean_reward,utility,violations\n", 0) == 0);
    opt.episodes = 0;
    opt.curve_csv = nullptr;
    CHECK(train(*a1, t1, opt).empty());
  }
}

TEST_CASE("checkpoints restore every agent exactly") {
  AgentConfig c = small_config();
  for (const std::string kind : {"ddpg", "sac", "rdpg"}) {
    c.rdpg_episode_batch = 2;
    auto a = make_agent(kind, 1, 1, c, 3);
    stub::Recall task(3);
    TrainOptions opt;
    opt.episodes = 30;
    opt.seed = 1;
    train(*a, task, opt);
    std::stringstream io;
    nn::write_checkpoint(io, a->checkpoint());
    auto b = make_agent(kind, 1, 1, c, 99);
    b->restore(nn::read_checkpoint(io));
    for (double o : {1.0, -1.0, 0.0}) {
      a->begin_episode(0);
      b->begin_episode(0);
      CHECK(a->act({o}, false) == b->act({o}, false));
    }
    auto wrong = make_agent(kind, 2, 1, c, 3);
    CHECK_THROWS(wrong->restore(a->checkpoint()));
  }
}

TEST_CASE("make_agent rejects unknown kinds") {
  CHECK_THROWS_AS(make_agent("ppo", 1, 1, AgentConfig{}, 0), std::invalid_argument);
}

TEST_CASE("greedy serves higher-priced slices first and stays feasible") {
  Scenario sc = fixture::small_scenario(4, 1);
  sc.prices.revenue_per_mbps = {1.0, 3.0};
  const ChannelState ch = realize_channels(sc.radio, 5);
  std::vector<double> w;
  for (const auto& d : sc.demand) w.push_back(d.w_bar_bps);
  const Allocation a = greedy_allocate(sc, ch, w);
  const Evaluation ev = evaluate(sc, a, ch, w);
  CHECK(ev.violations.structural_ok());
  CHECK(ev.violations.c7.ok());
  CHECK(ev.violations.c8.ok());
  CHECK(ev.violations.capacity.ok());
  // one subchannel per BS; slice 1 users (odd ids) get first pick
  for (std::size_t i = 0; i < sc.radio.bs_count(); ++i) {
    const std::size_t u = a.radio.user_at(i, 0);
    if (u == kNoUser) continue;
    bool slice1_here = false;
    for (std::size_t v = 0; v < sc.user_count(); ++v)
      if (sc.radio.user_bs[v] == i && sc.radio.user_slice[v] == 1) slice1_here = true;
    if (slice1_here) CHECK(sc.radio.user_slice[u] == 1);
  }
  // rate floor holds on every slice that serves someone
  for (std::size_t u = 0; u < sc.user_count(); ++u)
    if (ev.served[u]) CHECK(ev.violations.c4.slack[sc.radio.user_slice[u]] >= 0.0);
}

TEST_CASE("greedy places functions to minimize incremental delay") {
  Scenario sc = fixture::small_scenario(1, 2);
  const ChannelState ch = realize_channels(sc.radio, 2);
  const Allocation a = greedy_allocate(sc, ch, std::vector<double>{sc.demand[0].w_bar_bps});
  REQUIRE(a.radio.serves(0));
  // uniform nodes: staying at the ingress has no hop, so the chain sits there
  for (const VmRef& v : a.placement.vnf[0]) CHECK(v.node == sc.core.ingress[0]);
}

TEST_CASE("distributed agents split the action and see disjoint views") {
  Config cfg = preset("desk");
  cfg.agent = small_config();
  Scenario sc = fixture::small_scenario(3, 2);
  EnvParams ep = cfg.env;
  ep.episode_length = 4;
  SlicingEnv env(sc, ep, 1);
  DistributedSac dist(env, cfg.agent, 3);
  CHECK(dist.ran().action_dim() + dist.core().action_dim() == env.action_dim());
  CHECK(dist.ran().observation_dim() == env.ran_observation_dim());
  CHECK(dist.core().observation_dim() == env.core_observation_dim());
  const auto obs = env.reset(2);
  const auto d = dist.decide(env, obs, false);
  CHECK(d.joint.size() == env.action_dim());
  for (std::size_t i = 0; i < d.ran_action.size(); ++i) CHECK(d.joint[i] == d.ran_action[i]);
  for (std::size_t i = 0; i < d.core_action.size(); ++i) CHECK(d.joint[d.ran_action.size() + i] == d.core_action[i]);

  TrainOptions opt;
  opt.episodes = 3;
  opt.seed = 4;
  std::ostringstream a, b;
  opt.curve_csv = &a;
  distributed_train(dist, env, opt);
  DistributedSac again(env, cfg.agent, 3);
  opt.curve_csv = &b;
  distributed_train(again, env, opt);
  CHECK(a.str() == b.str());
}
