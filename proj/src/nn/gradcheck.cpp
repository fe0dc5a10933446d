#include "slicing/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "slicing/nn/lstm.hpp"
#include "slicing/nn/mlp.hpp"

namespace slicing::nn {

double relative_error(double analytic, double numeric, double floor) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
}

namespace {

using Loss = std::function<double()>;
using Pattern = std::function<std::vector<bool>()>;

// Central differences over every coordinate of `params`.
void compare(Buffer& params, const Buffer& analytic, const Loss& loss,
             const Pattern& pattern, double h, GradCheckResult& res) {
  loss();
  const auto base = pattern();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double keep = params[i];
    params[i] = keep + h;
    const double up = loss();
    const bool same_up = pattern() == base;
    params[i] = keep - h;
    const double down = loss();
    const bool same_down = pattern() == base;
    params[i] = keep;
    if (!same_up || !same_down) {
      ++res.skipped;
      continue;
    }
    res.max_rel_error = std::max(res.max_rel_error, relative_error(analytic[i], (up - down) / (2.0 * h)));
    ++res.checked;
  }
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Mat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> d(0.0, 1.0);
  Mat m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = d(rng);
  return m;
}

std::vector<std::size_t> random_sizes(std::mt19937_64& rng, std::size_t in, std::size_t out) {
  std::vector<std::size_t> s{in};
  const std::size_t hidden = pick(rng, 1, 2);
  for (std::size_t l = 0; l < hidden; ++l) s.push_back(pick(rng, 3, 10));
  s.push_back(out);
  return s;
}

void check_dense(std::mt19937_64& rng, double h, GradCheckResult& res) {
  const std::size_t in = pick(rng, 2, 8), out = pick(rng, 1, 4), batch = pick(rng, 1, 3);
  const Activation act = pick(rng, 0, 1) ? Activation::Tanh : Activation::Identity;
  Mlp net(random_sizes(rng, in, out), act, rng);
  const Mat x = random_mat(rng, in, batch);
  const Mat coef = random_mat(rng, out, batch);
  net.zero_grad();
  net.forward(x);
  net.backward(coef);
  const auto analytic = net.grads();
  compare(net.params(), analytic, [&] { return net.forward(x).cwiseProduct(coef).sum(); },
          [&] { return net.activation_pattern(); }, h, res);
}

void check_lstm(std::mt19937_64& rng, double h, GradCheckResult& res) {
  const std::size_t in = pick(rng, 2, 5), hid = pick(rng, 2, 6), batch = pick(rng, 1, 3);
  const std::size_t T = pick(rng, 1, 6), out = pick(rng, 1, 3);
  Lstm cell(in, hid, rng);
  Mlp head(random_sizes(rng, hid + in, out), Activation::Identity, rng);
  std::vector<Mat> xs, coef;
  for (std::size_t t = 0; t < T; ++t) {
    xs.push_back(random_mat(rng, in, batch));
    coef.push_back(random_mat(rng, out, batch));
  }
  // loss = sum_t coef_t . head([h_t; x_t])
  auto loss = [&] {
    const auto& hs = cell.forward(xs);
    double l = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      Mat z(Eigen::Index(hid + in), Eigen::Index(batch));
      z << hs[t], xs[t];
      l += head.predict(z).cwiseProduct(coef[t]).sum();
    }
    return l;
  };
  // every step's head pass has its own ReLU pattern
  auto pattern = [&] {
    std::vector<bool> p;
    const auto& hs = cell.forward(xs);
    for (std::size_t t = 0; t < T; ++t) {
      Mat z(Eigen::Index(hid + in), Eigen::Index(batch));
      z << hs[t], xs[t];
      head.forward(z);
      const auto q = head.activation_pattern();
      p.insert(p.end(), q.begin(), q.end());
    }
    return p;
  };

  cell.zero_grad();
  head.zero_grad();
  const auto& hs = cell.forward(xs);
  std::vector<Mat> dhs(T);
  for (std::size_t t = 0; t < T; ++t) {
    Mat z(Eigen::Index(hid + in), Eigen::Index(batch));
    z << hs[t], xs[t];
    head.forward(z);
    dhs[t] = head.backward(coef[t]).topRows(Eigen::Index(hid));
  }
  cell.backward(dhs);
  const auto g_cell = cell.grads();
  const auto g_head = head.grads();
  compare(cell.params(), g_cell, loss, pattern, h, res);
  compare(head.params(), g_head, loss, pattern, h, res);
}

// Q(s, mu(s)) differentiated into both nets, as in the deterministic policy gradient.
void check_actor_critic(std::mt19937_64& rng, double h, GradCheckResult& res) {
  const std::size_t s_dim = pick(rng, 2, 6), a_dim = pick(rng, 1, 4), batch = pick(rng, 1, 3);
  Mlp actor(random_sizes(rng, s_dim, a_dim), Activation::Tanh, rng);
  Mlp critic(random_sizes(rng, s_dim + a_dim, 1), Activation::Identity, rng);
  const Mat s = random_mat(rng, s_dim, batch);
  auto joint = [&](Mlp& a, Mlp& c) {
    Mat sa(Eigen::Index(s_dim + a_dim), Eigen::Index(batch));
    sa << s, a.forward(s);
    return c.forward(sa).sum();
  };
  auto loss = [&] { return joint(actor, critic); };
  auto pattern = [&] {
    joint(actor, critic);
    auto p = actor.activation_pattern();
    const auto q = critic.activation_pattern();
    p.insert(p.end(), q.begin(), q.end());
    return p;
  };
  actor.zero_grad();
  critic.zero_grad();
  joint(actor, critic);
  const Mat dsa = critic.backward(Mat::Ones(1, Eigen::Index(batch)));
  actor.backward(dsa.bottomRows(Eigen::Index(a_dim)));
  const auto g_actor = actor.grads();
  const auto g_critic = critic.grads();
  compare(actor.params(), g_actor, loss, pattern, h, res);
  compare(critic.params(), g_critic, loss, pattern, h, res);
}

}  // namespace

std::vector<GradCheckResult> run_gradient_checks(std::size_t configs, std::uint64_t seed, double h) {
  std::mt19937_64 rng(seed);
  std::vector<GradCheckResult> out{{"dense", 0, 0, 0}, {"lstm-bptt", 0, 0, 0}, {"actor-critic", 0, 0, 0}};
  for (std::size_t c = 0; c < configs; ++c) {
    check_dense(rng, h, out[0]);
    check_lstm(rng, h, out[1]);
    check_actor_critic(rng, h, out[2]);
  }
  return out;
}

}  // namespace slicing::nn
