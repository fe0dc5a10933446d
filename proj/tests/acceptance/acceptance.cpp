// One line per acceptance criterion. With --strict the exit status is the
// number of failures; otherwise the run succeeds once every line is printed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "../support/reference.hpp"
#include "../support/sampling.hpp"
#include "slicing/agents/greedy.hpp"
#include "slicing/agents/trainer.hpp"
#include "slicing/config.hpp"
#include "slicing/harness.hpp"
#include "slicing/nn/gradcheck.hpp"
#include "slicing/oracle.hpp"
#include "slicing/scenario.hpp"

using namespace slicing;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Verdict gradients() {
  double worst = 0.0;
  std::size_t coords = 0;
  for (const auto& r : nn::run_gradient_checks(20, 7, 1e-5)) {
    worst = std::max(worst, r.max_rel_error);
    coords += r.checked;
  }
  return {worst <= 1e-4, "max rel err " + fmt("%.2e", worst) + " over " + std::to_string(coords) + " coords"};
}

Verdict reward_oracle() {
  const Config cfg = preset("desk");
  std::mt19937_64 rng(2024);
  std::size_t feasible = 0, tried = 0;
  double worst = 0.0;
  std::uint64_t scenario_seed = 1;
  while (feasible < 1000 && tried < 500000) {
    const Scenario sc = generate_scenario(cfg.scenario, scenario_seed++);
    SlicingEnv env(sc, cfg.env, scenario_seed);
    env.reset(scenario_seed);
    while (!env.done() && feasible < 1000) {
      ++tried;
      // sparse cells keep most random allocations inside the budgets
      const Allocation a = sampling::random_allocation(sc, rng, 0.6);
      const auto t = reference::recompute(sc, a, env.channels(), env.demand_realization());
      const auto out = env.step_allocation(a);
      if (!reference::soft_feasible(sc, t) || !out.evaluation.violations.feasible()) continue;
      ++feasible;
      const double want = env.params().utility_scale *
                          (sc.prices.theta_revenue * t.revenue - sc.prices.theta_cost * (t.ran_cost + t.core_cost));
      worst = std::max(worst, rel(out.reward, want));
    }
  }
  return {feasible == 1000 && worst <= 1e-9,
          std::to_string(feasible) + " feasible of " + std::to_string(tried) + ", max rel err " + fmt("%.2e", worst)};
}

Verdict brute_force(const std::string& name) {
  const auto t0 = std::chrono::steady_clock::now();
  const TinyInstance t = load_tiny(std::filesystem::path(SLICING_DATA_DIR) / "tiny" / name);
  const Scenario sc = generate_scenario(t.config.scenario, t.seed);
  SlicingEnv env(sc, t.config.env, t.seed);
  env.reset(t.seed);
  double best_reward = -std::numeric_limits<double>::infinity();
  const auto r = enumerate_optimal(sc, env.channels(), env.demand_realization(), OracleOptions{t.power_levels},
                                   [&](const Allocation& a, const Evaluation&) {
                                     best_reward = std::max(best_reward, env.peek(a).reward);
                                   });
  const Allocation g = greedy_allocate(sc, env.channels(), env.demand_realization());
  const double greedy = evaluate(sc, g, env.channels(), env.demand_realization()).utility.total;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double want = env.params().utility_scale * r.utility;
  std::ostringstream d;
  d << name << ": greedy " << greedy << " <= oracle " << r.utility << ", best reward " << best_reward
    << " vs " << want << " over " << r.visited << " actions, " << fmt("%.1f", secs) << " s";
  return {r.any_feasible && greedy <= r.utility && best_reward == want && secs < 60.0, d.str()};
}

Verdict worst_case_csi() {
  const Config cfg = preset("desk");
  std::mt19937_64 rng(9);
  std::size_t pairs = 0, rises = 0;
  double worst_zero = 0.0;
  for (std::uint64_t s = 1; s <= 100; ++s) {
    const Scenario sc = generate_scenario(cfg.scenario, s);
    ChannelState ch = realize_channels(sc.radio, s);
    const Allocation a = sampling::random_allocation(sc, rng);
    for (std::size_t u = 0; u < sc.user_count(); ++u) {
      if (!a.radio.serves(u)) continue;
      const std::size_t b = sc.radio.user_bs[u];
      double prev = std::numeric_limits<double>::infinity();
      for (double g : {0.0, 0.02, 0.04, 0.06, 0.08, 0.10}) {
        ch.set_gamma(g);
        const double w = worst_case_rate(a.radio, ch, sc.radio, b, u);
        if (g == 0.0) worst_zero = std::max(worst_zero, rel(w, perfect_rate(a.radio, ch, sc.radio, b, u)));
        else ++pairs, rises += w > prev;
        prev = w;
      }
    }
  }
  return {rises == 0 && worst_zero <= 1e-12,
          std::to_string(rises) + " increases over " + std::to_string(pairs) + " adjacent pairs, gamma 0 rel err " +
              fmt("%.1e", worst_zero)};
}

Verdict demand_domination() {
  const Config cfg = preset("desk");
  const Scenario sc = generate_scenario(cfg.scenario, 3);
  std::mt19937_64 rng(31);
  const std::vector<bool> all(sc.user_count(), true);
  std::size_t violations = 0;
  for (int routing = 0; routing < 100; ++routing) {
    const Allocation a = sampling::random_allocation(sc, rng);
    const auto robust = check_c8(a.routing, a.placement, sc.core, sc.demand, all);
    for (int n = 0; n < 10000; ++n) {
      std::vector<double> w;
      for (const auto& d : sc.demand) w.push_back(std::uniform_real_distribution<double>(d.lower(), d.upper())(rng));
      const auto load = link_loads(a.routing, a.placement, sc.core, w, all);
      for (std::size_t l = 0; l < load.size(); ++l)
        violations += sc.core.graph.link(l).bandwidth_bps - robust.slack[l] < load[l];
    }
  }
  return {violations == 0, std::to_string(violations) + " violations over 100 routings x 10000 demand draws"};
}

Verdict overhead() {
  const Overhead o = signaling_overhead(preset("paper").scenario);
  std::ostringstream d;
  d << "RAN " << o.ran_bits << ", core " << o.core_bits << ", centralized " << o.centralized_bits() << " bits";
  return {o.ran_bits == 15360 && o.core_bits == 1392 && o.centralized_bits() == 16752, d.str()};
}

Verdict delay_sum() {
  const Config cfg = preset("desk");
  std::mt19937_64 rng(77);
  double worst = 0.0;
  std::size_t users = 0;
  for (std::uint64_t s = 1; s <= 200; ++s) {
    const Scenario sc = generate_scenario(cfg.scenario, s);
    const ChannelState ch = realize_channels(sc.radio, s + 1000);
    std::vector<double> w;
    for (const auto& d : sc.demand) w.push_back(std::uniform_real_distribution<double>(d.lower(), d.upper())(rng));
    const Allocation a = sampling::random_allocation(sc, rng);
    const Evaluation ev = evaluate(sc, a, ch, w);
    const auto proc = processing_delay(a.placement, sc.core, sc.radio.user_slice, sc.demand);
    const auto prop = core_prop_delay(a.routing, a.placement, sc.core);
    const auto trans = core_trans_delay(a.routing, a.placement, sc.core, w);
    const auto ran = ran_delays(a.radio, ch, sc.radio, sc.packet_bits());
    const auto t = reference::recompute(sc, a, ch, w);
    for (std::size_t u = 0; u < sc.user_count(); ++u) {
      if (!ev.served[u]) continue;
      ++users;
      const double five = proc[u] + prop[u] + trans[u] + ran[u].propagation_s + ran[u].transmission_s;
      worst = std::max({worst, rel(ev.delays[u].total(), five), rel(ev.delays[u].total(), t.delay[u])});
    }
  }
  RadioScenario r;
  r.bs_positions = {{0.0, 0.0}};
  r.user_positions = {{300.0, 0.0}};
  r.user_bs = {0};
  r.user_slice = {0};
  r.slice_count = 1;
  r.subchannels = 1;
  RadioAllocation one(1, 1);
  one.user_at(0, 0) = 0;
  RateReport rates;
  rates.user_rate_bps = {1e6};
  rates.slice_rate_bps = {1e6};
  const double p300 = ran_delays(one, rates, r, {1000.0})[0].propagation_s;
  return {worst <= 1e-12 && p300 == 1.0e-6,
          std::to_string(users) + " users, max rel err " + fmt("%.1e", worst) + ", 300 m -> " + fmt("%g", p300) +
              " s"};
}

double final_decile(const LearningCurve& c) {
  const std::size_t k = std::max<std::size_t>(1, c.size() / 10);
  double s = 0.0;
  for (std::size_t i = c.size() - k; i < c.size(); ++i) s += c[i].mean_reward;
  return s / double(k);
}

Verdict training() {
  const Config cfg = preset("desk");
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::ostringstream d;
  d << std::setprecision(4);
  for (std::uint64_t seed : {1, 2, 3}) {
    const Scenario sc = generate_scenario(cfg.scenario, seed);
    SlicingEnv env(sc, cfg.env, seed);
    const double greedy = evaluate_greedy(env, 20, seed).mean_reward;
    double score[3];
    const char* kinds[3] = {"sac", "rdpg", "ddpg"};
    for (int i = 0; i < 3; ++i) {
      SlicingTask task(env);
      auto agent = make_agent(kinds[i], env.observation_dim(), env.action_dim(), cfg.agent, seed);
      TrainOptions opt;
      opt.episodes = cfg.agent.episodes;
      opt.seed = seed;
      score[i] = final_decile(train(*agent, task, opt));
    }
    const bool seed_ok = score[0] >= greedy && score[1] >= greedy && score[1] >= score[2];
    ok = ok && seed_ok;
    d << "seed " << seed << ": greedy " << greedy << " sac " << score[0] << " rdpg " << score[1] << " ddpg "
      << score[2] << (seed_ok ? "" : " (x)") << "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  d << fmt("%.0f", secs) << " s";
  return {ok && secs < 1800.0, d.str()};
}

Verdict sweep_trends() {
  const auto t0 = std::chrono::steady_clock::now();
  const Config cfg = preset("desk");
  SweepOptions opt;
  opt.algorithms = {"greedy"};
  const auto rate = run_sweep(cfg, "rmin", opt);
  const auto delay = run_sweep(cfg, "delay", opt);
  std::size_t breaks = 0;
  std::ostringstream d;
  d << std::setprecision(4) << "sum rate";
  for (std::size_t i = 0; i < rate.size(); ++i) {
    d << ' ' << rate[i].sum_rate_bps / 1e3 << 'k';
    if (i > 0) breaks += rate[i].sum_rate_bps > rate[i - 1].sum_rate_bps;
  }
  d << "; accepted";
  for (std::size_t i = 0; i < delay.size(); ++i) {
    d << ' ' << delay[i].accepted_users;
    if (i > 0) breaks += delay[i].accepted_users < delay[i - 1].accepted_users;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  d << "; " << fmt("%.1f", secs) << " s";
  return {breaks == 0 && secs < 300.0, d.str()};
}

Verdict structural_safety() {
  const Config cfg = preset("desk");
  const Scenario sc = generate_scenario(cfg.scenario, 5);
  SlicingEnv env(sc, cfg.env, 5);
  std::mt19937_64 rng(55);
  const std::vector<bool> all(sc.user_count(), true);
  std::size_t failures = 0;
  for (int n = 0; n < 10000; ++n) {
    const auto act = sampling::random_action(env.action_dim(), rng, n % 2 ? 1.0 : 4.0);
    const Allocation a = decode_action(act, sc, env.layout());
    bool c1 = a.radio.user.size() == sc.radio.bs_count() * sc.radio.subchannels;
    for (std::size_t u : a.radio.user) c1 = c1 && (u == kNoUser || u < sc.user_count());
    if (!c1 || !check_c2(a.radio, sc.radio) || !check_c3(a.radio, sc.radio).ok() ||
        !check_c5(a.placement, sc.core, sc.radio.user_slice, all) || !check_c6(a.routing, a.placement, sc.core, all))
      ++failures;
  }
  return {failures == 0, std::to_string(failures) + " failures over 10000 decodes"};
}

}  // namespace

int main(int argc, char** argv) {
  // optional arguments pick a subset of criteria by number
  std::vector<std::string> only(argv + 1, argv + argc);
  const auto strict_it = std::find(only.begin(), only.end(), "--strict");
  const bool strict = strict_it != only.end();
  if (strict) only.erase(strict_it);
  // --report <file> keeps a copy of the verdict lines
  std::ofstream report;
  if (const auto r = std::find(only.begin(), only.end(), "--report"); r != only.end() && r + 1 != only.end()) {
    report.open(*(r + 1));
    only.erase(r, r + 2);
  }
  const auto emit = [&](const std::string& line) {
    std::cout << line << std::endl;
    if (report) report << line << std::endl;
  };
  int failed = 0;
  const auto run = [&](const std::string& id, const std::string& title, const std::function<Verdict()>& f) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) return;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !v.pass;
    emit(std::string(v.pass ? "PASS " : "FAIL ") + id + ' ' + title + " | " + v.detail + " | " + fmt("%.1f", secs) +
         " s");
  };

  run("1", "gradient correctness", [] {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v = gradients();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.pass = v.pass && secs < 30.0;
    return v;
  });
  run("2", "reward equals scaled utility", reward_oracle);
  run("3", "brute-force equivalence", [] {
    Verdict all{true, ""};
    for (const char* name : {"a.ini", "b.ini", "c.ini"}) {
      const Verdict v = brute_force(name);
      all.pass = all.pass && v.pass;
      all.detail += (all.detail.empty() ? "" : "; ") + v.detail;
    }
    return all;
  });
  run("4", "worst-case CSI monotone", worst_case_csi);
  run("5", "robust demand domination", demand_domination);
  run("6", "signaling overhead", overhead);
  run("7", "delay decomposition", delay_sum);
  run("8", "training smoke test", training);
  run("9", "monotone sweep trends", sweep_trends);
  run("10", "structural constraint safety", structural_safety);
  emit(failed ? std::to_string(failed) + " criteria failed" : "all criteria passed");
  return strict ? failed : 0;
}
