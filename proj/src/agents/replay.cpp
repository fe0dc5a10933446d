#include "slicing/agents/replay.hpp"

#include <cmath>

namespace slicing {

std::vector<std::size_t> sample_indices(std::size_t size, std::size_t n, std::mt19937_64& rng) {
  if (size == 0) throw std::invalid_argument("cannot sample from an empty buffer");
  std::uniform_int_distribution<std::size_t> d(0, size - 1);
  std::vector<std::size_t> out(n);
  for (auto& i : out) i = d(rng);
  return out;
}

void RewardNormalizer::add_episode(const std::vector<double>& rewards) {
  if (!enabled_ || rewards.empty()) return;
  Sums e;
  for (double r : rewards) {
    e.n += 1;
    e.s += r;
    e.ss += r * r;
  }
  episodes_.push_back(e);
  if (episodes_.size() > window_) episodes_.pop_front();
  Sums t;
  for (const auto& x : episodes_) {
    t.n += x.n;
    t.s += x.s;
    t.ss += x.ss;
  }
  mean_ = t.s / t.n;
  const double var = std::max(0.0, t.ss / t.n - mean_ * mean_);
  std_ = std::sqrt(var) > 1e-8 ? std::sqrt(var) : 1.0;
}

double RewardNormalizer::normalize(double r) const {
  return enabled_ ? (r - mean_) / std_ : r;
}

}  // namespace slicing
