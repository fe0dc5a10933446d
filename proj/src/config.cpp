#include "slicing/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace slicing {

double ScenarioParams::noise_w() const {
  return std::pow(10.0, (noise_dbm_per_hz - 30.0) / 10.0) * subchannel_bw_hz;
}

void ScenarioParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid scenario: ") + what);
  };
  require(users >= 1, "users >= 1");
  require(base_stations >= 1, "base_stations >= 1");
  require(subchannels >= 1, "subchannels >= 1");
  require(slices >= 1 && slices <= 3, "slices in [1, 3]");
  require(area_m > 0.0, "area_m > 0");
  require(subchannel_bw_hz > 0.0, "subchannel_bw_hz > 0");
  require(p_max_w > 0.0, "p_max_w > 0");
  require(gamma_csi >= 0.0 && gamma_csi < 1.0, "gamma_csi in [0, 1)");
  require(w_hat >= 0.0 && w_hat < 1.0, "w_hat in [0, 1)");
  require(vms_per_node >= 1, "vms_per_node >= 1");
  require(k_paths >= 1, "k_paths >= 1");
  require(node_cpu_hz > 0.0, "node_cpu_hz > 0");
  require(node_ram_bytes >= 0.0 && node_storage_bytes >= 0.0, "node memory >= 0");
  for (const auto* v : {&r_min_bps_hz, &tau_max_ms, &w_bar_bps, &packet_bits, &revenue_per_mbps})
    require(v->size() >= slices, "per-slice lists need an entry per slice");
  require(slice_names.size() >= slices && chains.size() >= slices,
          "per-slice lists need an entry per slice");
  for (std::size_t s = 0; s < slices; ++s) {
    require(r_min_bps_hz[s] >= 0.0, "r_min >= 0");
    require(tau_max_ms[s] >= 0.0, "tau_max >= 0");
    require(w_bar_bps[s] >= 0.0 && packet_bits[s] >= 0.0, "demands >= 0");
    require(revenue_per_mbps[s] >= 0.0, "prices >= 0");
  }
  require(vnf_cycles_per_bit.size() == 6, "six VNF cycle costs");
  require(ran_cost_per_watt >= 0.0 && node_cost_per_cycle >= 0.0 && link_cost_per_bit >= 0.0,
          "prices >= 0");
  require(theta_revenue >= 0.0 && theta_cost >= 0.0, "scaling factors >= 0");
}

void AgentConfig::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [0, 1]");
  if (batch == 0) throw std::invalid_argument("batch must be positive");
  if (width == 0 || hidden_layers == 0) throw std::invalid_argument("hidden layers must be non-empty");
  if (!(actor_lr > 0.0 && critic_lr > 0.0)) throw std::invalid_argument("learning rates must be positive");
  if (!(actor_lr < critic_lr))
    throw std::invalid_argument("actor learning rate must be below the critic learning rate");
  if (buffer_capacity == 0) throw std::invalid_argument("buffer capacity must be positive");
  if (exploration_noise < 0.0) throw std::invalid_argument("exploration noise must be nonnegative");
  if (rdpg_episode_batch == 0) throw std::invalid_argument("rdpg_episode_batch must be positive");
}

Config preset(const std::string& name) {
  Config cfg;
  if (name == "paper") return cfg;
  if (name == "desk") {
    cfg.scenario.users = 6;
    cfg.scenario.base_stations = 2;
    cfg.scenario.subchannels = 4;
    // one VM per node and two paths keep the action small enough to train in minutes
    cfg.scenario.vms_per_node = 1;
    cfg.scenario.k_paths = 2;
    cfg.env.episode_length = 25;
    cfg.agent.episodes = 500;
    cfg.agent.width = 64;
    cfg.agent.lstm_hidden = 32;
    cfg.agent.buffer_capacity = 100000;
    cfg.agent.actor_lr = 3e-4;
    cfg.agent.critic_lr = 1e-3;
    cfg.agent.tau = 0.005;
    cfg.agent.rdpg_updates_per_episode = 2;
    return cfg;
  }
  throw std::invalid_argument("unknown preset " + name);
}

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

template <class T>
std::string render(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return format_double(v);
  } else if constexpr (std::is_same_v<T, bool>) {
    return v ? "true" : "false";
  } else if constexpr (std::is_same_v<T, std::string>) {
    return v;
  } else if constexpr (std::is_same_v<T, std::vector<double>>) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
    return out;
  } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
    return boost::algorithm::join(v, ",");
  } else {
    return std::to_string(v);
  }
}

template <class T>
void assign(T& field, const std::string& text, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, double>) {
      field = std::stod(text);
    } else if constexpr (std::is_same_v<T, bool>) {
      if (text == "true" || text == "1") field = true;
      else if (text == "false" || text == "0") field = false;
      else throw std::invalid_argument(text);
    } else if constexpr (std::is_same_v<T, std::string>) {
      field = text;
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      std::vector<std::string> parts;
      boost::algorithm::split(parts, text, boost::is_any_of(","));
      field.clear();
      for (auto& p : parts) field.push_back(std::stod(boost::algorithm::trim_copy(p)));
    } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
      std::vector<std::string> parts;
      boost::algorithm::split(parts, text, boost::is_any_of(","));
      field.clear();
      for (auto& p : parts) field.push_back(boost::algorithm::trim_copy(p));
    } else {
      const long long v = std::stoll(text);
      if (v < 0) throw std::invalid_argument(text);
      field = static_cast<T>(v);
    }
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad value for " + key + ": '" + text + "'");
  }
}

template <class C, class F>
void visit_fields(C& cfg, F&& f) {
  auto& s = cfg.scenario;
  f("scenario", "users", s.users);
  f("scenario", "base_stations", s.base_stations);
  f("scenario", "subchannels", s.subchannels);
  f("scenario", "slices", s.slices);
  f("scenario", "area_m", s.area_m);
  f("scenario", "subchannel_bw_hz", s.subchannel_bw_hz);
  f("scenario", "noise_dbm_per_hz", s.noise_dbm_per_hz);
  f("scenario", "p_max_w", s.p_max_w);
  f("scenario", "path_loss_ref_db", s.path_loss_ref_db);
  f("scenario", "path_loss_exponent", s.path_loss_exponent);
  f("scenario", "gamma_csi", s.gamma_csi);
  f("scenario", "w_hat", s.w_hat);
  f("scenario", "graph", s.graph);
  f("scenario", "vms_per_node", s.vms_per_node);
  f("scenario", "k_paths", s.k_paths);
  f("scenario", "node_cpu_hz", s.node_cpu_hz);
  f("scenario", "node_ram_bytes", s.node_ram_bytes);
  f("scenario", "node_storage_bytes", s.node_storage_bytes);
  f("slices", "names", s.slice_names);
  f("slices", "r_min_bps_hz", s.r_min_bps_hz);
  f("slices", "tau_max_ms", s.tau_max_ms);
  f("slices", "w_bar_bps", s.w_bar_bps);
  f("slices", "packet_bits", s.packet_bits);
  f("slices", "revenue_per_mbps", s.revenue_per_mbps);
  f("slices", "chains", s.chains);
  f("vnf", "cycles_per_bit", s.vnf_cycles_per_bit);
  f("vnf", "ram_bytes", s.vnf_ram_bytes);
  f("vnf", "storage_bytes", s.vnf_storage_bytes);
  f("prices", "ran_cost_per_watt", s.ran_cost_per_watt);
  f("prices", "node_cost_per_cycle", s.node_cost_per_cycle);
  f("prices", "link_cost_per_bit", s.link_cost_per_bit);
  f("prices", "theta_revenue", s.theta_revenue);
  f("prices", "theta_cost", s.theta_cost);
  auto& e = cfg.env;
  f("env", "episode_length", e.episode_length);
  f("env", "utility_scale", e.utility_scale);
  f("env", "penalty_weight", e.penalty_weight);
  f("env", "penalty_cap", e.penalty_cap);
  f("env", "warmup_draws", e.warmup_draws);
  auto& a = cfg.agent;
  f("agent", "gamma", a.gamma);
  f("agent", "batch", a.batch);
  f("agent", "tau", a.tau);
  f("agent", "hidden_layers", a.hidden_layers);
  f("agent", "width", a.width);
  f("agent", "lstm_hidden", a.lstm_hidden);
  f("agent", "actor_lr", a.actor_lr);
  f("agent", "critic_lr", a.critic_lr);
  f("agent", "lr_decay", a.lr_decay);
  f("agent", "buffer_capacity", a.buffer_capacity);
  f("agent", "episodes", a.episodes);
  f("agent", "exploration_noise", a.exploration_noise);
  f("agent", "rdpg_episode_batch", a.rdpg_episode_batch);
  f("agent", "rdpg_updates_per_episode", a.rdpg_updates_per_episode);
  f("agent", "updates_per_step", a.updates_per_step);
  f("agent", "warmup_steps", a.warmup_steps);
  f("agent", "sac_init_temperature", a.sac_init_temperature);
  f("agent", "sac_auto_temperature", a.sac_auto_temperature);
  f("agent", "sac_target_entropy_per_dim", a.sac_target_entropy_per_dim);
  f("agent", "temperature_lr", a.temperature_lr);
  f("agent", "normalize_rewards", a.normalize_rewards);
  f("agent", "reward_window_episodes", a.reward_window_episodes);
}

}  // namespace

Config parse_config(std::istream& in, const Config& base) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw std::runtime_error(std::string("config: ") + e.what());
  }
  Config cfg = base;
  if (auto p = tree.get_optional<std::string>("config.preset")) cfg = preset(*p);

  std::size_t known = 0;
  visit_fields(cfg, [&](const char* section, const char* key, auto& field) {
    const std::string path = std::string(section) + "." + key;
    if (auto v = tree.get_optional<std::string>(path)) {
      assign(field, boost::algorithm::trim_copy(*v), path);
      ++known;
    }
  });
  std::size_t present = 0;
  for (const auto& [section, body] : tree) {
    for (const auto& [key, value] : body) {
      if (section == "config" && key == "preset") continue;
      ++present;
    }
  }
  if (present != known) {
    for (const auto& [section, body] : tree) {
      for (const auto& [key, value] : body) {
        if (section == "config" && key == "preset") continue;
        bool found = false;
        visit_fields(cfg, [&](const char* s, const char* k, auto&) {
          found = found || (section == s && key == k);
        });
        if (!found) throw std::runtime_error("config: unknown key " + section + "." + key);
      }
    }
  }
  cfg.scenario.validate();
  cfg.agent.validate();
  return cfg;
}

Config load_config(const std::filesystem::path& file, const Config& base) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open config file " + file.string());
  return parse_config(in, base);
}

void write_config(std::ostream& out, const Config& cfg) {
  std::string current;
  visit_fields(cfg, [&](const char* section, const char* key, const auto& field) {
    if (current != section) {
      if (!current.empty()) out << '\n';
      out << '[' << section << "]\n";
      current = section;
    }
    out << key << " = " << render(field) << '\n';
  });
}

}  // namespace slicing
