#include "slicing/harness.hpp"

#include <atomic>
#include <exception>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "slicing/agents/trainer.hpp"
#include "slicing/scenario.hpp"

namespace slicing {

std::vector<double> axis_values(const std::string& axis) {
  if (axis == "users") return {2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24};
  if (axis == "demand") return {0, 5, 10, 15, 20, 25, 30};
  if (axis == "csi") return {0, 2, 4, 6, 8, 10};
  if (axis == "delay") return {60, 100, 200, 300, 400, 500};
  if (axis == "rmin") return {1, 1.2, 1.4, 1.6, 1.8, 2, 3, 4, 5};
  throw std::invalid_argument("unknown sweep axis '" + axis + "'");
}

Config apply_axis(Config cfg, const std::string& axis, double value) {
  ScenarioParams& s = cfg.scenario;
  if (axis == "users") {
    s.users = static_cast<std::size_t>(value);
    s.gamma_csi = 0.05;
    s.w_hat = 0.10;
  } else if (axis == "demand") {
    s.w_hat = value / 100.0;
    s.gamma_csi = 0.02;
  } else if (axis == "csi") {
    s.gamma_csi = value / 100.0;
  } else if (axis == "delay") {
    s.tau_max_ms.assign(s.tau_max_ms.size(), value);
  } else if (axis == "rmin") {
    s.r_min_bps_hz.assign(s.r_min_bps_hz.size(), value);
  } else {
    throw std::invalid_argument("unknown sweep axis '" + axis + "'");
  }
  s.validate();
  return cfg;
}

namespace {

void check_algorithm(const std::string& a) {
  if (a != "rdpg" && a != "sac" && a != "ddpg" && a != "dist" && a != "greedy")
    throw std::invalid_argument("unknown algorithm '" + a + "'");
}

}  // namespace

SweepRow run_point(const Config& cfg, const std::string& algorithm, std::uint64_t seed, std::size_t eval_episodes) {
  check_algorithm(algorithm);
  const Scenario sc = generate_scenario(cfg.scenario, seed);
  SlicingEnv env(sc, cfg.env, seed);
  TrainOptions train_opt;
  train_opt.episodes = cfg.agent.episodes;
  train_opt.seed = seed;

  EpisodeSummary score;
  if (algorithm == "greedy") {
    score = evaluate_greedy(env, eval_episodes, seed);
  } else if (algorithm == "dist") {
    DistributedSac agents(env, cfg.agent, seed);
    distributed_train(agents, env, train_opt);
    score = evaluate_distributed(agents, env, eval_episodes, seed);
  } else {
    SlicingTask task(env);
    auto agent = make_agent(algorithm, env.observation_dim(), env.action_dim(), cfg.agent, seed);
    train(*agent, task, train_opt);
    score = evaluate_agent(*agent, task, eval_episodes, seed);
  }
  SweepRow row;
  row.algorithm = algorithm;
  row.seed = seed;
  row.utility = score.utility;
  row.sum_rate_bps = score.sum_rate_bps;
  row.cost = score.cost;
  row.reward = score.mean_reward;
  row.violations = score.violations;
  row.accepted_users = score.accepted_users;
  return row;
}

std::vector<SweepRow> run_sweep(const Config& cfg, const std::string& axis, const SweepOptions& opt) {
  const std::vector<double> values = opt.values.empty() ? axis_values(axis) : opt.values;
  if (opt.algorithms.empty()) throw std::invalid_argument("no algorithms to sweep");
  if (opt.seeds.empty()) throw std::invalid_argument("no seeds to sweep");
  for (const auto& a : opt.algorithms) check_algorithm(a);

  struct Job {
    Config cfg;
    double value;
    std::string algorithm;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (double v : values) {
    const Config point = apply_axis(cfg, axis, v);
    for (const auto& a : opt.algorithms)
      for (auto s : opt.seeds) jobs.push_back({point, v, a, s});
  }

  std::vector<SweepRow> rows(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) {
      try {
        rows[i] = run_point(jobs[i].cfg, jobs[i].algorithm, jobs[i].seed, opt.eval_episodes);
        rows[i].axis = axis;
        rows[i].value = jobs[i].value;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(opt.workers, jobs.size()));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "axis,value,algorithm,seed,utility,sum_rate_bps,cost,reward,violations,accepted_users\n";
  out << std::setprecision(10);
  for (const auto& r : rows)
    out << r.axis << ',' << r.value << ',' << r.algorithm << ',' << r.seed << ',' << r.utility << ','
        << r.sum_rate_bps << ',' << r.cost << ',' << r.reward << ',' << r.violations << ',' << r.accepted_users
        << '\n';
}

Overhead signaling_overhead(std::uint64_t bs, std::uint64_t users, std::uint64_t subchannels, std::uint64_t nodes,
                            std::uint64_t vms, std::uint64_t links) {
  return Overhead{16 * bs * users * subchannels, 16 * (nodes * vms + links)};
}

Overhead signaling_overhead(const ScenarioParams& p) {
  const CoreGraph g = resolve_graph(p);
  return signaling_overhead(p.base_stations, p.users, p.subchannels, g.node_count(), p.vms_per_node,
                            g.link_count());
}

}  // namespace slicing
