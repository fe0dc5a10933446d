#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "slicing/radio.hpp"

using namespace slicing;

namespace {

// One BS per user at fixed distance; each user on its own cell.
RadioScenario cells(std::size_t bs, std::size_t k, double noise) {
  RadioScenario r;
  for (std::size_t i = 0; i < bs; ++i) {
    r.bs_positions.push_back({1000.0 * double(i), 0});
    r.user_positions.push_back({1000.0 * double(i) + 10.0, 0});
    r.user_bs.push_back(i);
    r.user_slice.push_back(0);
  }
  r.slice_count = 1;
  r.subchannels = k;
  r.subchannel_bw_hz = 20e3;
  r.noise_w = noise;
  r.p_max_w = 4.0;
  return r;
}

// Rate evaluated straight from the definition, with explicit gains.
double direct_rate(double bw, double p, double g, const std::vector<double>& ip,
                   const std::vector<double>& ig, double noise) {
  double interference = 0;
  for (std::size_t i = 0; i < ip.size(); ++i) interference += ip[i] * ig[i];
  return bw * std::log2(1.0 + p * g / (interference + noise));
}

}  // namespace

TEST_CASE("path loss anchor and monotonicity") {
  PathLossModel pl;
  CHECK(pl.gain(1.0) == std::pow(10.0, -3.8));
  CHECK(pl.gain(0.2) == pl.gain(1.0));
  CHECK(pl.gain(10.0) < pl.gain(5.0));
}

TEST_CASE("channel realization is seeded and has unit second moment") {
  RadioScenario r = cells(1, 100, 1e-15);
  r.user_positions[0] = r.bs_positions[0];  // distance clamps to the 1 m anchor
  CHECK(realize_channels(r, 5) == realize_channels(r, 5));
  CHECK(!(realize_channels(r, 5) == realize_channels(r, 6)));

  std::mt19937_64 rng(42);
  const double g0 = r.path_loss.gain(1.0);
  double sum = 0;
  const int draws = 1000;
  for (int n = 0; n < draws; ++n) {
    const ChannelState ch = realize_channels(r, rng);
    for (std::size_t k = 0; k < 100; ++k) sum += ch.power_gain(0, 0, k) / g0;
  }
  CHECK(sum / (draws * 100.0) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("rate formula basics") {
  RadioScenario r = cells(1, 1, 1e-12);
  ChannelState ch(1, 1, 1, 0.0);
  ch.at(0, 0, 0) = std::sqrt(1e-12);
  RadioAllocation a(1, 1);
  a.user_at(0, 0) = 0;
  CHECK(sinr_and_rate(a, ch, r, 0, 0, 0) == 0.0);
  a.power(0, 0) = 1.0;  // p |h|^2 / sigma^2 = 1
  CHECK(sinr_and_rate(a, ch, r, 0, 0, 0) == doctest::Approx(20000.0));

  ch.set_gamma(0.05);
  CHECK(worst_case_rate(a, ch, r, 0, 0) == doctest::Approx(20e3 * std::log2(1.0 + 0.9025)));
  ch.set_gamma(1.0);
  CHECK_THROWS(worst_case_rate(a, ch, r, 0, 0));
}

TEST_CASE("two co-channel cells match the direct formula") {
  RadioScenario r = cells(2, 2, 1e-13);
  const ChannelState ch = realize_channels(r, 11);
  RadioAllocation a(2, 2);
  a.user_at(0, 0) = 0;
  a.power(0, 0) = 1.5;
  a.user_at(1, 0) = 1;
  a.power(1, 0) = 0.7;
  a.user_at(1, 1) = 1;
  a.power(1, 1) = 2.0;
  const double r0 = direct_rate(20e3, 1.5, ch.power_gain(0, 0, 0), {0.7}, {ch.power_gain(1, 0, 0)}, 1e-13);
  CHECK(sinr_and_rate(a, ch, r, 0, 0, 0) == doctest::Approx(r0).epsilon(1e-12));
  const double r1 = direct_rate(20e3, 0.7, ch.power_gain(1, 1, 0), {1.5}, {ch.power_gain(0, 1, 0)}, 1e-13) +
                    direct_rate(20e3, 2.0, ch.power_gain(1, 1, 1), {}, {}, 1e-13);
  CHECK(perfect_rate(a, ch, r, 1, 1) == doctest::Approx(r1).epsilon(1e-12));
}

TEST_CASE("worst-case rate is the minimum over the error box") {
  RadioScenario r = cells(2, 1, 1e-13);
  ChannelState est = realize_channels(r, 3);
  const double gamma = 0.04;
  est.set_gamma(gamma);
  RadioAllocation a(2, 1);
  a.user_at(0, 0) = 0;
  a.power(0, 0) = 2.0;
  a.user_at(1, 0) = 1;
  a.power(1, 0) = 2.0;
  const double worst = worst_case_rate(a, est, r, 0, 0);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi), rad(0.0, 1.0);
  double lowest = 1e300;
  int below = 0;
  for (int n = 0; n < 1000000; ++n) {
    ChannelState truth = est;
    for (std::size_t b = 0; b < 2; ++b) {
      auto& h = truth.at(b, 0, 0);
      const double mag = gamma * std::abs(h) * std::sqrt(rad(rng));
      h += std::polar(mag, phase(rng));
    }
    const double rate = perfect_rate(a, truth, r, 0, 0);
    if (rate < worst * (1 - 1e-12)) ++below;
    lowest = std::min(lowest, rate);
  }
  CHECK(below == 0);
  CHECK((lowest - worst) / worst < 0.005);
}

TEST_CASE("worst-case rate falls with gamma and matches perfect CSI at zero") {
  const auto sc = fixture::small_scenario(3, 2);
  ChannelState ch = realize_channels(sc.radio, 17);
  RadioAllocation a(2, 2);
  for (std::size_t u = 0; u < 3; ++u) {
    const std::size_t b = sc.radio.user_bs[u];
    for (std::size_t k = 0; k < 2; ++k)
      if (a.user_at(b, k) == kNoUser) {
        a.user_at(b, k) = u;
        a.power(b, k) = 1.0;
        break;
      }
  }
  for (std::size_t u = 0; u < 3; ++u) {
    const std::size_t b = sc.radio.user_bs[u];
    double prev = 1e300;
    for (double g : {0.0, 0.02, 0.04, 0.06, 0.08, 0.10}) {
      ch.set_gamma(g);
      const double w = worst_case_rate(a, ch, sc.radio, b, u);
      if (g == 0.0) CHECK(w == doctest::Approx(perfect_rate(a, ch, sc.radio, b, u)).epsilon(1e-12));
      CHECK(w <= prev);
      prev = w;
    }
  }
}

TEST_CASE("C2 and C3 checks") {
  const auto sc = fixture::small_scenario(3, 2);
  RadioAllocation a(2, 2);
  CHECK(check_c2(a, sc.radio));
  const std::size_t foreign = sc.radio.user_bs[0] == 0 ? 2 : 0;
  a.user_at(0, 0) = sc.radio.user_bs[foreign] == 0 ? kNoUser : foreign;
  if (a.user_at(0, 0) != kNoUser) CHECK(!check_c2(a, sc.radio));
  a.user_at(0, 0) = 99;
  CHECK(!check_c2(a, sc.radio));

  RadioAllocation p(2, 2);
  p.user_at(0, 0) = 0;
  p.user_at(0, 1) = 0;
  p.power(0, 0) = 2.0;
  p.power(0, 1) = 2.0;
  auto c3 = check_c3(p, sc.radio);
  CHECK(c3.ok());
  CHECK(c3.slack[0] == 0.0);
  p.power(0, 1) = 2.5;
  CHECK(!check_c3(p, sc.radio).ok());
  p.power(0, 1) = 0.0;
  p.power(1, 0) = 0.1;  // power on an idle subchannel
  CHECK(!check_c3(p, sc.radio).ok());
}

TEST_CASE("C4 slack per slice") {
  RadioScenario r = cells(1, 1, 1e-12);
  r.slice_count = 2;
  ChannelState ch(1, 1, 1, 0.0);
  ch.at(0, 0, 0) = std::sqrt(1e-12);
  RadioAllocation a(1, 1);
  a.user_at(0, 0) = 0;
  a.power(0, 0) = 1.0;  // exactly 1 bps/Hz
  const auto c4 = check_c4(a, ch, r, {1.0, 2.0});
  CHECK(c4.slack[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(c4.slack[1] == -2.0 * 20e3);
}

TEST_CASE("RAN delays") {
  RadioScenario r = cells(1, 1, 1e-12);
  r.user_positions[0] = {300.0, 0.0};
  RadioAllocation a(1, 1);
  a.user_at(0, 0) = 0;
  RateReport rates;
  rates.user_rate_bps = {0.0};
  rates.slice_rate_bps = {0.0};
  auto d = ran_delays(a, rates, r, {20000.0});
  CHECK(d[0].propagation_s == 1.0e-6);
  CHECK(d[0].transmission_s == 0.0);
  rates.user_rate_bps = {20000.0};
  d = ran_delays(a, rates, r, {20000.0});
  CHECK(d[0].transmission_s == 1.0);

  RadioAllocation idle(1, 1);
  d = ran_delays(idle, rates, r, {20000.0});
  CHECK(d[0].propagation_s == 0.0);
}
