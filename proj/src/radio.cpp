#include "slicing/radio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace slicing {

double distance(const Position& a, const Position& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double PathLossModel::gain(double distance_m) const {
  const double d = std::max(distance_m, 1.0);
  return std::pow(10.0, ref_gain_db / 10.0) * std::pow(d / ref_distance_m, -exponent);
}

double RadioScenario::serving_distance(std::size_t user) const {
  return std::max(1.0, distance(bs_positions.at(user_bs.at(user)), user_positions.at(user)));
}

std::vector<std::size_t> RadioScenario::users_of_bs(std::size_t bs) const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < user_count(); ++u)
    if (user_bs[u] == bs) out.push_back(u);
  return out;
}

std::vector<std::size_t> RadioScenario::users_of_slice(std::size_t slice) const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < user_count(); ++u)
    if (user_slice[u] == slice) out.push_back(u);
  return out;
}

std::size_t RadioScenario::max_users_per_bs() const {
  std::size_t best = 0;
  for (std::size_t i = 0; i < bs_count(); ++i) best = std::max(best, users_of_bs(i).size());
  return best;
}

void RadioScenario::validate() const {
  if (bs_positions.empty()) throw std::invalid_argument("radio scenario has no base stations");
  if (subchannels == 0) throw std::invalid_argument("radio scenario has no subchannels");
  if (user_slice.size() != user_count() || user_bs.size() != user_count())
    throw std::invalid_argument("every user needs exactly one slice and one BS");
  for (std::size_t u = 0; u < user_count(); ++u) {
    if (user_slice[u] >= slice_count) throw std::invalid_argument("user mapped to unknown slice");
    if (user_bs[u] >= bs_count()) throw std::invalid_argument("user mapped to unknown BS");
  }
  if (!(subchannel_bw_hz > 0.0) || !(noise_w > 0.0) || !(p_max_w > 0.0))
    throw std::invalid_argument("bandwidth, noise and power budget must be positive");
  if (gamma_csi < 0.0 || gamma_csi >= 1.0)
    throw std::invalid_argument("CSI uncertainty bound must lie in [0, 1)");
}

std::size_t nearest_bs(const std::vector<Position>& bs, const Position& user) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const double d = distance(bs[i], user);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

ChannelState::ChannelState(std::size_t bs, std::size_t users, std::size_t subchannels,
                           double gamma)
    : bs_(bs), users_(users), k_(subchannels), gamma_(gamma), h_(bs * users * subchannels) {}

ChannelState realize_channels(const RadioScenario& sc, std::mt19937_64& rng) {
  ChannelState ch(sc.bs_count(), sc.user_count(), sc.subchannels, sc.gamma_csi);
  // CN(0,1): real and imaginary parts each N(0, 1/2).
  std::normal_distribution<double> half(0.0, std::sqrt(0.5));
  for (std::size_t i = 0; i < sc.bs_count(); ++i) {
    for (std::size_t u = 0; u < sc.user_count(); ++u) {
      const double amp = std::sqrt(sc.path_loss.gain(distance(sc.bs_positions[i], sc.user_positions[u])));
      for (std::size_t k = 0; k < sc.subchannels; ++k) {
        const double re = half(rng);
        const double im = half(rng);
        ch.at(i, u, k) = amp * std::complex<double>(re, im);
      }
    }
  }
  return ch;
}

ChannelState realize_channels(const RadioScenario& sc, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return realize_channels(sc, rng);
}

bool RadioAllocation::serves(std::size_t u) const {
  return std::find(user.begin(), user.end(), u) != user.end();
}

double RadioAllocation::bs_power(std::size_t bs) const {
  double p = 0.0;
  for (std::size_t k = 0; k < subchannels; ++k)
    if (user_at(bs, k) != kNoUser) p += power(bs, k);
  return p;
}

namespace {

// Shannon rate on (bs, k) towards `user` with gains scaled by the given
// amplitude factors on the desired and interfering links.
double scaled_rate(const RadioAllocation& alloc, const ChannelState& ch, const RadioScenario& sc,
                   std::size_t bs, std::size_t k, std::size_t user, double desired_scale,
                   double interferer_scale) {
  if (alloc.user_at(bs, k) != user || sc.user_bs[user] != bs) return 0.0;
  const double p = alloc.power(bs, k);
  if (p <= 0.0) return 0.0;
  double interference = 0.0;
  for (std::size_t j = 0; j < alloc.bs_count; ++j) {
    if (j == bs) continue;
    const std::size_t other = alloc.user_at(j, k);
    if (other == kNoUser || other == user) continue;
    interference += alloc.power(j, k) * ch.power_gain(j, user, k);
  }
  interference *= interferer_scale * interferer_scale;
  const double signal = p * ch.power_gain(bs, user, k) * desired_scale * desired_scale;
  return sc.subchannel_bw_hz * std::log2(1.0 + signal / (interference + sc.noise_w));
}

}  // namespace

double sinr_and_rate(const RadioAllocation& alloc, const ChannelState& gains,
                     const RadioScenario& sc, std::size_t bs, std::size_t k, std::size_t user) {
  return scaled_rate(alloc, gains, sc, bs, k, user, 1.0, 1.0);
}

double perfect_rate(const RadioAllocation& alloc, const ChannelState& gains,
                    const RadioScenario& sc, std::size_t bs, std::size_t user) {
  double r = 0.0;
  for (std::size_t k = 0; k < sc.subchannels; ++k)
    r += scaled_rate(alloc, gains, sc, bs, k, user, 1.0, 1.0);
  return r;
}

double worst_case_rate(const RadioAllocation& alloc, const ChannelState& ch,
                       const RadioScenario& sc, std::size_t bs, std::size_t user) {
  const double g = ch.gamma();
  if (g < 0.0 || g >= 1.0) throw std::invalid_argument("CSI uncertainty bound must lie in [0, 1)");
  double r = 0.0;
  for (std::size_t k = 0; k < sc.subchannels; ++k)
    r += scaled_rate(alloc, ch, sc, bs, k, user, 1.0 - g, 1.0 + g);
  return r;
}

double RateReport::total_bps() const {
  return std::accumulate(slice_rate_bps.begin(), slice_rate_bps.end(), 0.0);
}

RateReport compute_rates(const RadioAllocation& alloc, const ChannelState& ch,
                         const RadioScenario& sc) {
  RateReport out;
  out.user_rate_bps.assign(sc.user_count(), 0.0);
  out.slice_rate_bps.assign(sc.slice_count, 0.0);
  for (std::size_t u = 0; u < sc.user_count(); ++u) {
    out.user_rate_bps[u] = worst_case_rate(alloc, ch, sc, sc.user_bs[u], u);
    out.slice_rate_bps[sc.user_slice[u]] += out.user_rate_bps[u];
  }
  return out;
}

bool ConstraintCheck::ok() const {
  return std::all_of(slack.begin(), slack.end(), [](double s) { return s >= 0.0; });
}

double ConstraintCheck::worst() const {
  return slack.empty() ? 0.0 : *std::min_element(slack.begin(), slack.end());
}

bool check_c2(const RadioAllocation& alloc, const RadioScenario& sc) {
  if (alloc.bs_count != sc.bs_count() || alloc.subchannels != sc.subchannels) return false;
  if (alloc.user.size() != alloc.bs_count * alloc.subchannels) return false;
  for (std::size_t i = 0; i < alloc.bs_count; ++i) {
    for (std::size_t k = 0; k < alloc.subchannels; ++k) {
      const std::size_t u = alloc.user_at(i, k);
      if (u == kNoUser) continue;
      if (u >= sc.user_count() || sc.user_bs[u] != i) return false;
    }
  }
  return true;
}

ConstraintCheck check_c3(const RadioAllocation& alloc, const RadioScenario& sc) {
  ConstraintCheck out;
  for (std::size_t i = 0; i < alloc.bs_count; ++i) {
    double slack = sc.p_max_w - alloc.bs_power(i);
    for (std::size_t k = 0; k < alloc.subchannels; ++k) {
      const double p = alloc.power(i, k);
      if (p < 0.0 || !std::isfinite(p) || (alloc.user_at(i, k) == kNoUser && p != 0.0))
        slack = -std::numeric_limits<double>::infinity();
    }
    out.slack.push_back(slack);
  }
  return out;
}

ConstraintCheck check_c4(const RateReport& rates, const RadioScenario& sc,
                         const std::vector<double>& r_min_bps_hz) {
  if (r_min_bps_hz.size() != sc.slice_count)
    throw std::invalid_argument("need one minimum rate per slice");
  ConstraintCheck out;
  for (std::size_t s = 0; s < sc.slice_count; ++s)
    out.slack.push_back(rates.slice_rate_bps[s] - r_min_bps_hz[s] * sc.subchannel_bw_hz);
  return out;
}

ConstraintCheck check_c4(const RadioAllocation& alloc, const ChannelState& ch,
                         const RadioScenario& sc, const std::vector<double>& r_min_bps_hz) {
  return check_c4(compute_rates(alloc, ch, sc), sc, r_min_bps_hz);
}

std::vector<RanDelay> ran_delays(const RadioAllocation& alloc, const RateReport& rates,
                                 const RadioScenario& sc,
                                 const std::vector<double>& packet_bits) {
  std::vector<RanDelay> out(sc.user_count());
  for (std::size_t u = 0; u < sc.user_count(); ++u) {
    if (alloc.serves(u)) out[u].propagation_s = sc.serving_distance(u) / kSpeedOfLight;
    const double r = rates.user_rate_bps[u];
    out[u].transmission_s = r > 0.0 ? packet_bits.at(u) / r : 0.0;
  }
  return out;
}

std::vector<RanDelay> ran_delays(const RadioAllocation& alloc, const ChannelState& ch,
                                 const RadioScenario& sc,
                                 const std::vector<double>& packet_bits) {
  return ran_delays(alloc, compute_rates(alloc, ch, sc), sc, packet_bits);
}

}  // namespace slicing
