#pragma once

#include <cstddef>
#include <deque>
#include <random>
#include <stdexcept>
#include <vector>

namespace slicing {

struct Transition {
  std::vector<double> s, a;
  double r = 0.0;
  std::vector<double> s2;
};

/// One episode: observations o_0..o_T (the last one only bootstraps),
/// actions a_0..a_{T-1} and rewards r_0..r_{T-1}.
struct EpisodeRecord {
  std::vector<std::vector<double>> obs;
  std::vector<std::vector<double>> actions;
  std::vector<double> rewards;

  std::size_t length() const { return rewards.size(); }
};

/// `n` indices drawn uniformly with replacement from [0, size).
std::vector<std::size_t> sample_indices(std::size_t size, std::size_t n, std::mt19937_64& rng);

/// FIFO ring buffer: the oldest item goes once capacity is reached.
template <class T>
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : cap_(capacity) {
    if (capacity == 0) throw std::invalid_argument("replay capacity must be positive");
  }

  void push(T item) {
    if (items_.size() < cap_) {
      items_.push_back(std::move(item));
    } else {
      items_[head_] = std::move(item);
      head_ = (head_ + 1) % cap_;
    }
  }
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return cap_; }
  bool empty() const { return items_.empty(); }
  /// i-th oldest item.
  const T& at(std::size_t i) const { return items_.at((head_ + i) % items_.size()); }

  std::vector<const T*> sample(std::size_t n, std::mt19937_64& rng) const {
    std::vector<const T*> out;
    for (std::size_t i : sample_indices(items_.size(), n, rng)) out.push_back(&at(i));
    return out;
  }

 private:
  std::size_t cap_;
  std::size_t head_ = 0;
  std::vector<T> items_;
};

/// Running reward statistics over the last `window` episodes.
class RewardNormalizer {
 public:
  explicit RewardNormalizer(std::size_t window = 100, bool enabled = true) : window_(window), enabled_(enabled) {}

  void add_episode(const std::vector<double>& rewards);
  double normalize(double r) const;
  double mean() const { return mean_; }
  double stddev() const { return std_; }

 private:
  struct Sums {
    double n = 0, s = 0, ss = 0;
  };
  std::size_t window_;
  bool enabled_;
  std::deque<Sums> episodes_;
  double mean_ = 0.0, std_ = 1.0;
};

}  // namespace slicing
