#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "slicing/nn/tensor.hpp"

namespace slicing::nn {

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Adam with bias correction, over a flat parameter vector.
class Adam {
 public:
  Adam() = default;
  explicit Adam(std::size_t n, AdamParams p = {});

  void step(std::span<double> params, std::span<const double> grads, double lr);

  std::size_t steps() const { return t_; }
  const Buffer& first_moment() const { return m_; }
  const Buffer& second_moment() const { return v_; }

 private:
  AdamParams p_;
  Buffer m_, v_;
  std::size_t t_ = 0;
};

/// target <- tau * online + (1 - tau) * target
void soft_update(std::span<double> target, std::span<const double> online, double tau);

/// lr0 / (1 + decay * t)
inline double inverse_time_lr(double lr0, double decay, double t) { return lr0 / (1.0 + decay * t); }

/// Throws std::runtime_error if any value is NaN or infinite.
void require_finite(std::span<const double> values, const char* what);

}  // namespace slicing::nn
