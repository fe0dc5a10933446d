#include "slicing/agents/trainer.hpp"

#include <iomanip>
#include <ostream>

#include "slicing/agents/greedy.hpp"

namespace slicing {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ stream) ^ index);
}

void write_curve_header(std::ostream& out) { out << "episode,mean_reward,utility,violations\n"; }

void write_curve_row(std::ostream& out, const EpisodeSummary& e) {
  out << e.episode << ',' << std::setprecision(10) << e.mean_reward << ',' << e.utility << ',' << e.violations
      << '\n';
}

namespace {

constexpr std::uint64_t kTrainStream = 1;
constexpr std::uint64_t kEvalStream = 2;

struct Accumulator {
  EpisodeSummary s;
  std::size_t n = 0;
  void add(const TaskStep& t) {
    s.mean_reward += t.reward;
    s.utility += t.utility;
    s.violations += double(t.violations);
    s.sum_rate_bps += t.sum_rate_bps;
    s.cost += t.cost;
    s.accepted_users += double(t.accepted_users);
    ++n;
  }
  EpisodeSummary finish(std::size_t episode) {
    if (n > 0) {
      const double d = double(n);
      s.mean_reward /= d;
      s.utility /= d;
      s.violations /= d;
      s.sum_rate_bps /= d;
      s.cost /= d;
      s.accepted_users /= d;
    }
    s.episode = episode;
    return s;
  }
};

EpisodeSummary average(const std::vector<EpisodeSummary>& xs) {
  EpisodeSummary m;
  for (const auto& x : xs) {
    m.mean_reward += x.mean_reward;
    m.utility += x.utility;
    m.violations += x.violations;
    m.sum_rate_bps += x.sum_rate_bps;
    m.cost += x.cost;
    m.accepted_users += x.accepted_users;
  }
  if (!xs.empty()) {
    const double d = double(xs.size());
    m.mean_reward /= d;
    m.utility /= d;
    m.violations /= d;
    m.sum_rate_bps /= d;
    m.cost /= d;
    m.accepted_users /= d;
  }
  return m;
}

}  // namespace

EpisodeSummary run_episode(Agent& agent, Task& task, std::uint64_t seed, bool explore, bool learn,
                           std::size_t episode_index) {
  agent.begin_episode(episode_index);
  std::vector<double> obs = task.reset(seed);
  Accumulator acc;
  for (;;) {
    const auto action = agent.act(obs, explore);
    TaskStep st = task.step(action);
    acc.add(st);
    if (learn) agent.observe(obs, action, st.reward, st.observation);
    obs = std::move(st.observation);
    if (st.done) break;
  }
  if (learn) agent.end_episode();
  return acc.finish(episode_index);
}

LearningCurve train(Agent& agent, Task& task, const TrainOptions& opt) {
  LearningCurve curve;
  if (opt.curve_csv) write_curve_header(*opt.curve_csv);
  for (std::size_t ep = 0; ep < opt.episodes; ++ep) {
    curve.push_back(run_episode(agent, task, derive_seed(opt.seed, kTrainStream, ep), true, true, ep));
    if (opt.curve_csv) write_curve_row(*opt.curve_csv, curve.back());
    if (opt.on_episode) opt.on_episode(curve.back());
  }
  return curve;
}

EpisodeSummary evaluate_agent(Agent& agent, Task& task, std::size_t episodes, std::uint64_t seed) {
  std::vector<EpisodeSummary> runs;
  for (std::size_t ep = 0; ep < episodes; ++ep)
    runs.push_back(run_episode(agent, task, derive_seed(seed, kEvalStream, ep), false, false, ep));
  return average(runs);
}

EpisodeSummary evaluate_greedy(SlicingEnv& env, std::size_t episodes, std::uint64_t seed) {
  std::vector<EpisodeSummary> runs;
  for (std::size_t ep = 0; ep < episodes; ++ep) {
    env.reset(derive_seed(seed, kEvalStream, ep));
    Accumulator acc;
    while (!env.done()) {
      const Allocation a = greedy_allocate(env.scenario(), env.channels(), env.demand_realization());
      acc.add(to_task_step(env.step_allocation(a)));
    }
    runs.push_back(acc.finish(ep));
  }
  return average(runs);
}

DistributedSac::DistributedSac(const SlicingEnv& env, const AgentConfig& cfg, std::uint64_t seed)
    : ran_(env.ran_observation_dim(), env.layout().radio_dim(), cfg, derive_seed(seed, 7, 0)),
      core_(env.core_observation_dim(), env.layout().core_dim(), cfg, derive_seed(seed, 7, 1)) {}

DistributedSac::Decision DistributedSac::decide(const SlicingEnv& env, const std::vector<double>& obs,
                                                bool explore) {
  Decision d;
  d.ran_obs = env.ran_observation(obs);
  d.ran_action = ran_.act(d.ran_obs, explore);
  d.joint = d.ran_action;
  d.joint.resize(env.action_dim(), 0.0);
  const Allocation radio_only = decode_action(d.joint, env.scenario(), env.layout());
  d.core_obs = env.core_observation(obs, radio_only.radio);
  d.core_action = core_.act(d.core_obs, explore);
  std::copy(d.core_action.begin(), d.core_action.end(), d.joint.begin() + std::ptrdiff_t(d.ran_action.size()));
  return d;
}

EpisodeSummary run_distributed_episode(DistributedSac& agents, SlicingEnv& env, std::uint64_t seed, bool explore,
                                       bool learn, std::size_t episode_index) {
  agents.ran().begin_episode(episode_index);
  agents.core().begin_episode(episode_index);
  auto d = agents.decide(env, env.reset(seed), explore);
  Accumulator acc;
  for (;;) {
    const TaskStep st = to_task_step(env.step(d.joint));
    acc.add(st);
    // the core agent's next state depends on the next radio decision
    DistributedSac::Decision next = st.done ? agents.decide(env, st.observation, false)
                                            : agents.decide(env, st.observation, explore);
    if (learn) {
      agents.ran().observe(d.ran_obs, d.ran_action, st.reward, next.ran_obs);
      agents.core().observe(d.core_obs, d.core_action, st.reward, next.core_obs);
    }
    if (st.done) break;
    d = std::move(next);
  }
  if (learn) {
    agents.ran().end_episode();
    agents.core().end_episode();
  }
  return acc.finish(episode_index);
}

LearningCurve distributed_train(DistributedSac& agents, SlicingEnv& env, const TrainOptions& opt) {
  LearningCurve curve;
  if (opt.curve_csv) write_curve_header(*opt.curve_csv);
  for (std::size_t ep = 0; ep < opt.episodes; ++ep) {
    curve.push_back(run_distributed_episode(agents, env, derive_seed(opt.seed, kTrainStream, ep), true, true, ep));
    if (opt.curve_csv) write_curve_row(*opt.curve_csv, curve.back());
    if (opt.on_episode) opt.on_episode(curve.back());
  }
  return curve;
}

EpisodeSummary evaluate_distributed(DistributedSac& agents, SlicingEnv& env, std::size_t episodes,
                                    std::uint64_t seed) {
  std::vector<EpisodeSummary> runs;
  for (std::size_t ep = 0; ep < episodes; ++ep)
    runs.push_back(run_distributed_episode(agents, env, derive_seed(seed, kEvalStream, ep), false, false, ep));
  return average(runs);
}

}  // namespace slicing
