#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace slicing {

/// Physical instance parameters. Defaults reproduce the full-scale setup
/// (24 users, 4 cells, 10 subchannels, Abilene core).
struct ScenarioParams {
  std::size_t users = 24;
  std::size_t base_stations = 4;
  std::size_t subchannels = 10;
  std::size_t slices = 3;
  double area_m = 1000.0;
  double subchannel_bw_hz = 20e3;
  double noise_dbm_per_hz = -174.0;
  double p_max_w = 4.0;
  double path_loss_ref_db = -38.0;
  double path_loss_exponent = 3.5;
  double gamma_csi = 0.02;
  double w_hat = 0.05;

  std::string graph = "abilene";  // bundled name or a file path
  std::size_t vms_per_node = 6;
  std::size_t k_paths = 4;
  double node_cpu_hz = 1200e6;
  double node_ram_bytes = 64e9;
  double node_storage_bytes = 1e12;

  // Per-slice settings (eMBB, uRLLC, mMTC order); only the first `slices` are used.
  std::vector<std::string> slice_names{"eMBB", "uRLLC", "mMTC"};
  std::vector<double> r_min_bps_hz{2.0, 1.0, 1.0};
  std::vector<double> tau_max_ms{100.0, 60.0, 200.0};
  std::vector<double> w_bar_bps{20e6, 5e6, 1e6};
  std::vector<double> packet_bits{4000.0, 1000.0, 500.0};
  std::vector<double> revenue_per_mbps{1.0, 1.0, 1.0};
  std::vector<std::string> chains{"FW-WOC-VOC", "NAT-FW", "NAT-TM-IDPS"};

  // cycles/bit for NAT, FW, TM, WOC, IDPS, VOC
  std::vector<double> vnf_cycles_per_bit{200.0, 300.0, 250.0, 400.0, 600.0, 800.0};
  double vnf_ram_bytes = 1e9;
  double vnf_storage_bytes = 8e9;

  double ran_cost_per_watt = 1e-4;
  double node_cost_per_cycle = 1e-9;
  double link_cost_per_bit = 1e-8;
  double theta_revenue = 60.0;
  double theta_cost = 1.0;

  double noise_w() const;
  void validate() const;
  bool operator==(const ScenarioParams&) const = default;
};

struct EnvParams {
  std::size_t episode_length = 50;
  double utility_scale = 1e-3;
  double penalty_weight = 1.0;
  double penalty_cap = 1.0;  // per-entry cap on a normalized shortfall; <= 0 disables
  std::size_t warmup_draws = 1000;
  bool operator==(const EnvParams&) const = default;
};

struct AgentConfig {
  double gamma = 0.80;
  std::size_t batch = 64;
  double tau = 0.001;
  std::size_t hidden_layers = 2;
  std::size_t width = 512;
  std::size_t lstm_hidden = 64;
  double actor_lr = 1e-5;
  double critic_lr = 5e-5;
  double lr_decay = 0.0;  // lr(t) = lr0 / (1 + decay * episode)
  std::size_t buffer_capacity = 600000;
  std::size_t episodes = 4000;
  double exploration_noise = 0.1;
  std::size_t rdpg_episode_batch = 16;
  std::size_t rdpg_updates_per_episode = 1;
  std::size_t updates_per_step = 1;
  std::size_t warmup_steps = 0;
  double sac_init_temperature = 0.1;
  bool sac_auto_temperature = true;
  double sac_target_entropy_per_dim = -1.0;
  double temperature_lr = 3e-4;
  bool normalize_rewards = true;
  std::size_t reward_window_episodes = 100;

  void validate() const;
  bool operator==(const AgentConfig&) const = default;
};

struct Config {
  ScenarioParams scenario;
  EnvParams env;
  AgentConfig agent;
  bool operator==(const Config&) const = default;
};

/// "paper" (full scale) or "desk" (small instance that trains in minutes).
Config preset(const std::string& name);

/// Sectioned key-value text (`[scenario]`, `[env]`, `[agent]`). Keys not
/// present keep the values of `base`.
Config parse_config(std::istream& in, const Config& base = Config{});
Config load_config(const std::filesystem::path& file, const Config& base = Config{});
void write_config(std::ostream& out, const Config& cfg);

}  // namespace slicing
