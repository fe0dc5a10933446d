#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "slicing/agents/agent.hpp"
#include "slicing/agents/sac.hpp"
#include "slicing/agents/task.hpp"
#include "slicing/env.hpp"

namespace slicing {

/// Per-episode averages over its slots.
struct EpisodeSummary {
  std::size_t episode = 0;
  double mean_reward = 0.0;
  double utility = 0.0;
  double violations = 0.0;
  double sum_rate_bps = 0.0;
  double cost = 0.0;
  double accepted_users = 0.0;
};

using LearningCurve = std::vector<EpisodeSummary>;

/// splitmix64 over (base, stream, index): independent seeds per use.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

struct TrainOptions {
  std::size_t episodes = 0;
  std::uint64_t seed = 0;
  std::ostream* curve_csv = nullptr;  // `episode,mean_reward,utility,violations`
  std::function<void(const EpisodeSummary&)> on_episode;
};

void write_curve_header(std::ostream& out);
void write_curve_row(std::ostream& out, const EpisodeSummary& e);

/// Runs one episode; with `learn` the agent stores transitions and updates.
EpisodeSummary run_episode(Agent& agent, Task& task, std::uint64_t seed, bool explore, bool learn,
                           std::size_t episode_index = 0);
LearningCurve train(Agent& agent, Task& task, const TrainOptions& opt);
/// Mean over `episodes` exploration-free episodes.
EpisodeSummary evaluate_agent(Agent& agent, Task& task, std::size_t episodes, std::uint64_t seed);
EpisodeSummary evaluate_greedy(SlicingEnv& env, std::size_t episodes, std::uint64_t seed);

/// Two SAC learners splitting the joint action: the radio agent picks
/// (xi, p) from gains and demand, then the core agent picks (beta, Upsilon)
/// from residuals, demand and the served-user mask of that radio decision.
class DistributedSac {
 public:
  struct Decision {
    std::vector<double> ran_obs, ran_action, core_obs, core_action, joint;
  };

  DistributedSac(const SlicingEnv& env, const AgentConfig& cfg, std::uint64_t seed);

  Decision decide(const SlicingEnv& env, const std::vector<double>& obs, bool explore);
  SacAgent& ran() { return ran_; }
  SacAgent& core() { return core_; }

 private:
  SacAgent ran_, core_;
};

EpisodeSummary run_distributed_episode(DistributedSac& agents, SlicingEnv& env, std::uint64_t seed, bool explore,
                                       bool learn, std::size_t episode_index = 0);
LearningCurve distributed_train(DistributedSac& agents, SlicingEnv& env, const TrainOptions& opt);
EpisodeSummary evaluate_distributed(DistributedSac& agents, SlicingEnv& env, std::size_t episodes,
                                    std::uint64_t seed);

}  // namespace slicing
