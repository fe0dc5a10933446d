#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>

#include "slicing/agents/greedy.hpp"
#include "slicing/agents/trainer.hpp"
#include "slicing/config.hpp"
#include "slicing/env.hpp"
#include "slicing/harness.hpp"
#include "slicing/nn/gradcheck.hpp"
#include "slicing/oracle.hpp"
#include "slicing/scenario.hpp"

using namespace slicing;

namespace {

Config load(const std::string& file, const std::string& preset_name) {
  const Config base = preset(preset_name);
  return file.empty() ? base : load_config(file, base);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

int run_sim(const std::string& config, const std::string& preset_name, const std::string& axis,
            const std::string& algos, std::size_t seeds, std::size_t workers, std::size_t eval,
            const std::filesystem::path& out_dir) {
  const Config cfg = load(config, preset_name);
  SweepOptions opt;
  opt.algorithms = split_list(algos);
  opt.seeds.resize(seeds);
  std::iota(opt.seeds.begin(), opt.seeds.end(), 1);
  opt.workers = workers;
  opt.eval_episodes = eval;
  const auto rows = run_sweep(cfg, axis, opt);
  std::filesystem::create_directories(out_dir);
  const auto file = out_dir / (axis + ".csv");
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  write_sweep_csv(out, rows);
  std::cout << rows.size() << " rows -> " << file.string() << "\n";
  return 0;
}

int run_train(const std::string& config, const std::string& preset_name, const std::string& algo,
              std::uint64_t seed, const std::string& curve_path) {
  const Config cfg = load(config, preset_name);
  const Scenario sc = generate_scenario(cfg.scenario, seed);
  SlicingEnv env(sc, cfg.env, seed);
  std::ofstream curve;
  TrainOptions opt;
  opt.episodes = cfg.agent.episodes;
  opt.seed = seed;
  if (!curve_path.empty()) {
    curve.open(curve_path);
    if (!curve) throw std::runtime_error("cannot write " + curve_path);
    opt.curve_csv = &curve;
  } else {
    opt.curve_csv = &std::cout;
  }
  if (algo == "dist") {
    DistributedSac agents(env, cfg.agent, seed);
    distributed_train(agents, env, opt);
  } else {
    SlicingTask task(env);
    auto agent = make_agent(algo, env.observation_dim(), env.action_dim(), cfg.agent, seed);
    train(*agent, task, opt);
  }
  return 0;
}

int run_oracle(const std::string& file) {
  const TinyInstance t = load_tiny(file);
  const Scenario sc = generate_scenario(t.config.scenario, t.seed);
  SlicingEnv env(sc, t.config.env, t.seed);
  env.reset(t.seed);
  const OracleOptions opt{t.power_levels};
  const auto r = enumerate_optimal(sc, env.channels(), env.demand_realization(), opt);
  const Allocation g = greedy_allocate(sc, env.channels(), env.demand_realization());
  const Evaluation ge = evaluate(sc, g, env.channels(), env.demand_realization());
  std::cout << std::setprecision(12) << "visited " << r.visited << " feasible " << r.feasible << "\n"
            << "oracle utility " << r.utility << (r.any_feasible ? "" : " (nothing feasible)") << "\n"
            << "greedy utility " << ge.utility.total << (ge.violations.feasible() ? "" : " (infeasible)") << "\n";
  for (std::size_t u = 0; u < sc.user_count(); ++u) {
    std::cout << "user " << u << ":";
    for (std::size_t i = 0; i < sc.radio.bs_count(); ++i)
      for (std::size_t k = 0; k < sc.radio.subchannels; ++k)
        if (r.best.radio.user_at(i, k) == u) std::cout << " bs" << i << "/k" << k << "@" << r.best.radio.power(i, k) << "W";
    for (const VmRef& vm : r.best.placement.vnf[u]) std::cout << " n" << vm.node << ".v" << vm.vm;
    std::cout << "\n";
  }
  return 0;
}

int run_overhead(const std::string& config, const std::string& preset_name) {
  const Overhead o = signaling_overhead(load(config, preset_name).scenario);
  std::cout << "ran " << o.ran_bits << " bits\ncore " << o.core_bits << " bits\ncentralized " << o.centralized_bits()
            << " bits\n";
  return 0;
}

int run_gradcheck(std::size_t configs, std::uint64_t seed, double tol) {
  double worst = 0.0;
  for (const auto& r : nn::run_gradient_checks(configs, seed)) {
    std::cout << std::left << std::setw(28) << r.name << " max rel err " << std::scientific << std::setprecision(3)
              << r.max_rel_error << std::defaultfloat << "  (" << r.checked << " coords, " << r.skipped
              << " skipped)\n";
    worst = std::max(worst, r.max_rel_error);
  }
  std::cout << "worst " << worst << (worst <= tol ? " ok" : " FAILED") << "\n";
  return worst <= tol ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust end-to-end network slicing simulator"};
  app.require_subcommand(1);

  std::string config, preset_name = "paper";
  auto* sim = app.add_subcommand("sim", "sweep one axis and write a CSV");
  std::string axis, algos = "greedy";
  std::size_t seeds = 1, workers = 1, eval = 20;
  std::string out_dir = "results";
  sim->add_option("--config", config, "config file")->check(CLI::ExistingFile);
  sim->add_option("--preset", preset_name, "paper or desk")->capture_default_str();
  sim->add_option("--axis", axis, "users|demand|csi|delay|rmin")->required();
  sim->add_option("--algos", algos, "comma list of rdpg,sac,ddpg,dist,greedy")->capture_default_str();
  sim->add_option("--seeds", seeds, "seeds 1..n")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--workers", workers, "parallel sweep points")->capture_default_str();
  sim->add_option("--eval-episodes", eval, "evaluation episodes per point")->capture_default_str();
  sim->add_option("--out", out_dir, "output directory")->capture_default_str();

  auto* tr = app.add_subcommand("train", "train one agent and print its learning curve");
  std::string algo = "sac", curve;
  std::uint64_t seed = 1;
  tr->add_option("--config", config)->check(CLI::ExistingFile);
  tr->add_option("--preset", preset_name)->capture_default_str();
  tr->add_option("--algo", algo, "rdpg, sac, ddpg or dist")->capture_default_str();
  tr->add_option("--seed", seed)->capture_default_str();
  tr->add_option("--curve", curve, "CSV path (stdout if omitted)");

  auto* orc = app.add_subcommand("oracle", "brute-force a tiny instance");
  std::string tiny;
  orc->add_option("--tiny", tiny, "tiny instance file")->required()->check(CLI::ExistingFile);

  auto* ovh = app.add_subcommand("overhead", "signaling overhead of a centralized controller");
  ovh->add_option("--config", config)->check(CLI::ExistingFile);
  ovh->add_option("--preset", preset_name)->capture_default_str();

  auto* gc = app.add_subcommand("gradcheck", "finite-difference gradient checks");
  std::size_t configs = 20;
  std::uint64_t gc_seed = 7;
  double tol = 1e-4;
  gc->add_option("--configs", configs)->capture_default_str();
  gc->add_option("--seed", gc_seed)->capture_default_str();
  gc->add_option("--tol", tol)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*sim) return run_sim(config, preset_name, axis, algos, seeds, workers, eval, out_dir);
    if (*tr) return run_train(config, preset_name, algo, seed, curve);
    if (*orc) return run_oracle(tiny);
    if (*ovh) return run_overhead(config, preset_name);
    if (*gc) return run_gradcheck(configs, gc_seed, tol);
  } catch (const std::exception& e) {
    std::cerr << "slice: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
