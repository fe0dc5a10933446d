#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "slicing/harness.hpp"

using namespace slicing;

TEST_CASE("signaling overhead matches the field-count formulas") {
  const Overhead full = signaling_overhead(preset("paper").scenario);
  CHECK(full.ran_bits == 15360);
  CHECK(full.core_bits == 1392);
  CHECK(full.centralized_bits() == 16752);
  const Overhead unit = signaling_overhead(1, 1, 1, 1, 1, 1);
  CHECK(unit.ran_bits == 16);
  CHECK(unit.core_bits == 32);
}

TEST_CASE("sweep axes carry the published points") {
  CHECK(axis_values("csi") == std::vector<double>{0, 2, 4, 6, 8, 10});
  CHECK(axis_values("rmin").size() == 9);
  CHECK(axis_values("delay").front() == 60);
  CHECK(axis_values("delay").back() == 500);
  CHECK(axis_values("demand").back() == 30);
  CHECK(axis_values("users").back() == 24);
  CHECK_THROWS_AS(axis_values("bandwidth"), std::invalid_argument);
}

TEST_CASE("axis points set the swept parameter and the held ones") {
  const Config base = preset("desk");
  const Config d = apply_axis(base, "demand", 15);
  CHECK(d.scenario.w_hat == doctest::Approx(0.15));
  CHECK(d.scenario.gamma_csi == doctest::Approx(0.02));
  const Config u = apply_axis(base, "users", 10);
  CHECK(u.scenario.users == 10);
  CHECK(u.scenario.gamma_csi == doctest::Approx(0.05));
  CHECK(u.scenario.w_hat == doctest::Approx(0.10));
  const Config t = apply_axis(base, "delay", 300);
  for (double v : t.scenario.tau_max_ms) CHECK(v == 300);
  const Config r = apply_axis(base, "rmin", 1.4);
  for (double v : r.scenario.r_min_bps_hz) CHECK(v == 1.4);
  CHECK(apply_axis(base, "csi", 8).scenario.gamma_csi == doctest::Approx(0.08));
}

TEST_CASE("sweep input errors") {
  const Config cfg = preset("desk");
  SweepOptions opt;
  CHECK_THROWS_AS(run_sweep(cfg, "csi", opt), std::invalid_argument);
  opt.algorithms = {"greedy", "ppo"};
  CHECK_THROWS_AS(run_sweep(cfg, "csi", opt), std::invalid_argument);
  opt.algorithms = {"greedy"};
  CHECK_THROWS_AS(run_sweep(cfg, "speed", opt), std::invalid_argument);
  opt.seeds.clear();
  CHECK_THROWS_AS(run_sweep(cfg, "csi", opt), std::invalid_argument);
}

TEST_CASE("greedy csi sweep has one row per point and reproduces") {
  Config cfg = preset("desk");
  cfg.env.episode_length = 5;
  SweepOptions opt;
  opt.algorithms = {"greedy"};
  opt.seeds = {1, 2};
  opt.eval_episodes = 2;
  const auto rows = run_sweep(cfg, "csi", opt);
  REQUIRE(rows.size() == 12);
  CHECK(rows.front().value == 0);
  CHECK(rows.back().value == 10);
  std::ostringstream a, b;
  write_sweep_csv(a, rows);
  opt.workers = 2;
  write_sweep_csv(b, run_sweep(cfg, "csi", opt));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("axis,value,algorithm,seed,", 0) == 0);
}

TEST_CASE("learned points run end to end on a short budget") {
  Config cfg = preset("desk");
  cfg.env.episode_length = 4;
  cfg.agent.episodes = 2;
  cfg.agent.batch = 4;
  cfg.agent.rdpg_episode_batch = 1;
  for (const char* algo : {"ddpg", "sac", "rdpg", "dist"}) {
    const SweepRow r = run_point(cfg, algo, 3, 1);
    CHECK(r.algorithm == algo);
    CHECK(std::isfinite(r.reward));
  }
}
