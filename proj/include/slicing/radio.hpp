#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace slicing {

inline constexpr double kSpeedOfLight = 3.0e8;
inline constexpr std::size_t kNoUser = std::numeric_limits<std::size_t>::max();

struct Position {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Position& a, const Position& b);

/// Log-distance path loss, gain(d) = g0 * (d / d0)^-exponent.
struct PathLossModel {
  double ref_gain_db = -38.0;
  double ref_distance_m = 1.0;
  double exponent = 3.5;

  double gain(double distance_m) const;
};

struct RadioScenario {
  std::vector<Position> bs_positions;
  std::vector<Position> user_positions;
  std::vector<std::size_t> user_slice;
  std::vector<std::size_t> user_bs;
  std::size_t slice_count = 0;
  std::size_t subchannels = 0;
  double subchannel_bw_hz = 0.0;
  double noise_w = 0.0;  // per-subchannel AWGN power
  double p_max_w = 0.0;
  double gamma_csi = 0.0;  // relative CSI error bound
  PathLossModel path_loss;

  std::size_t bs_count() const { return bs_positions.size(); }
  std::size_t user_count() const { return user_positions.size(); }
  double total_bandwidth_hz() const { return subchannel_bw_hz * static_cast<double>(subchannels); }
  /// Distance between the user and its serving BS, clamped to 1 m.
  double serving_distance(std::size_t user) const;
  std::vector<std::size_t> users_of_bs(std::size_t bs) const;
  std::vector<std::size_t> users_of_slice(std::size_t slice) const;
  std::size_t max_users_per_bs() const;

  /// Throws std::invalid_argument when the association maps are inconsistent.
  void validate() const;
};

/// Index of the nearest base station (ties go to the lower index).
std::size_t nearest_bs(const std::vector<Position>& bs, const Position& user);

/// Estimated complex gains h~ for every (BS, user, subchannel).
class ChannelState {
 public:
  ChannelState() = default;
  ChannelState(std::size_t bs, std::size_t users, std::size_t subchannels, double gamma);

  std::complex<double>& at(std::size_t bs, std::size_t user, std::size_t k) {
    return h_[index(bs, user, k)];
  }
  const std::complex<double>& at(std::size_t bs, std::size_t user, std::size_t k) const {
    return h_[index(bs, user, k)];
  }
  double power_gain(std::size_t bs, std::size_t user, std::size_t k) const {
    return std::norm(at(bs, user, k));
  }

  std::size_t bs_count() const { return bs_; }
  std::size_t user_count() const { return users_; }
  std::size_t subchannels() const { return k_; }
  double gamma() const { return gamma_; }
  void set_gamma(double g) { gamma_ = g; }
  const std::vector<std::complex<double>>& raw() const { return h_; }

  bool operator==(const ChannelState&) const = default;

 private:
  std::size_t index(std::size_t bs, std::size_t user, std::size_t k) const {
    return (bs * users_ + user) * k_ + k;
  }
  std::size_t bs_ = 0, users_ = 0, k_ = 0;
  double gamma_ = 0.0;
  std::vector<std::complex<double>> h_;
};

/// Rayleigh block fading over the log-distance path gain: h = sqrt(gain(d)) g,
/// g ~ CN(0, 1).
ChannelState realize_channels(const RadioScenario& sc, std::uint64_t seed);
ChannelState realize_channels(const RadioScenario& sc, std::mt19937_64& rng);

/// Subchannel assignment xi and power p, one entry per (BS, subchannel).
struct RadioAllocation {
  std::size_t bs_count = 0;
  std::size_t subchannels = 0;
  std::vector<std::size_t> user;  // kNoUser when idle
  std::vector<double> power_w;

  RadioAllocation() = default;
  RadioAllocation(std::size_t bs, std::size_t k)
      : bs_count(bs), subchannels(k), user(bs * k, kNoUser), power_w(bs * k, 0.0) {}

  std::size_t& user_at(std::size_t bs, std::size_t k) { return user[bs * subchannels + k]; }
  std::size_t user_at(std::size_t bs, std::size_t k) const { return user[bs * subchannels + k]; }
  double& power(std::size_t bs, std::size_t k) { return power_w[bs * subchannels + k]; }
  double power(std::size_t bs, std::size_t k) const { return power_w[bs * subchannels + k]; }

  /// Whether the user holds at least one subchannel (max_k xi).
  bool serves(std::size_t u) const;
  double bs_power(std::size_t bs) const;

  bool operator==(const RadioAllocation&) const = default;
};

/// Rate of `user` on subchannel k of BS i with the given (true) gains.
double sinr_and_rate(const RadioAllocation& alloc, const ChannelState& gains,
                     const RadioScenario& sc, std::size_t bs, std::size_t k, std::size_t user);

/// Sum over subchannels of the perfect-CSI rate.
double perfect_rate(const RadioAllocation& alloc, const ChannelState& gains,
                    const RadioScenario& sc, std::size_t bs, std::size_t user);

/// Worst case of the rate over the error disk |e| <= gamma |h~| on every gain:
/// desired amplitude (1 - gamma)|h~|, interferers (1 + gamma)|h~'|.
double worst_case_rate(const RadioAllocation& alloc, const ChannelState& ch,
                       const RadioScenario& sc, std::size_t bs, std::size_t user);

struct RateReport {
  std::vector<double> user_rate_bps;   // worst-case rate at the serving BS
  std::vector<double> slice_rate_bps;  // sum over the slice's users
  double total_bps() const;
};

RateReport compute_rates(const RadioAllocation& alloc, const ChannelState& ch,
                         const RadioScenario& sc);

struct ConstraintCheck {
  std::vector<double> slack;  // >= 0 satisfied
  bool ok() const;
  double worst() const;
};

/// C2: every active (BS, subchannel) serves one user associated with that BS.
bool check_c2(const RadioAllocation& alloc, const RadioScenario& sc);
/// C3: per-BS power budget, slack = P_max - sum_k p. Also requires p >= 0 and
/// p == 0 on idle subchannels (reported as -inf slack).
ConstraintCheck check_c3(const RadioAllocation& alloc, const RadioScenario& sc);
/// C4: per slice, worst-case slice rate >= r_min (bps/Hz) * B_k.
ConstraintCheck check_c4(const RadioAllocation& alloc, const ChannelState& ch,
                         const RadioScenario& sc, const std::vector<double>& r_min_bps_hz);
ConstraintCheck check_c4(const RateReport& rates, const RadioScenario& sc,
                         const std::vector<double>& r_min_bps_hz);

struct RanDelay {
  double propagation_s = 0.0;
  double transmission_s = 0.0;
};

/// Per-user RAN propagation and transmission delay (worst-case rate in the
/// denominator; zero rate gives zero transmission delay).
std::vector<RanDelay> ran_delays(const RadioAllocation& alloc, const RateReport& rates,
                                 const RadioScenario& sc,
                                 const std::vector<double>& packet_bits);
std::vector<RanDelay> ran_delays(const RadioAllocation& alloc, const ChannelState& ch,
                                 const RadioScenario& sc,
                                 const std::vector<double>& packet_bits);

}  // namespace slicing
