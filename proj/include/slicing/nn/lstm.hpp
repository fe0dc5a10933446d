#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "slicing/nn/tensor.hpp"

namespace slicing::nn {

/// Single-layer LSTM. Stacked gate rows are input, forget, output, candidate;
/// W is 4H x (in + H) column-major acting on [x; h_prev], followed by b (4H).
class Lstm {
 public:
  struct State {
    Mat h, c;  // H x batch
  };

  Lstm() = default;
  Lstm(std::size_t input, std::size_t hidden, std::mt19937_64& rng);

  std::size_t input_dim() const { return in_; }
  std::size_t hidden_dim() const { return hid_; }
  std::string shape() const;

  Buffer& params() { return params_; }
  const Buffer& params() const { return params_; }
  Buffer& grads() { return grads_; }
  const Buffer& grads() const { return grads_; }
  void zero_grad();

  MatMap weight();
  ConstMatMap weight() const;
  VecMap bias();
  ConstVecMap bias() const;

  State zero_state(std::size_t batch) const;

  /// Unrolls from the zero state over xs[t] (in x batch) and caches for bptt.
  const std::vector<Mat>& forward(const std::vector<Mat>& xs);
  /// Backpropagation through time given dL/dh_t for every step. Gradients are
  /// summed over steps; `truncation` > 0 cuts the recurrent gradient every
  /// that many steps. Returns dL/dx_t.
  std::vector<Mat> backward(const std::vector<Mat>& dhs, std::size_t truncation = 0);

  /// One inference step; updates `state` in place and returns the new h.
  const Mat& step(const Mat& x, State& state) const;

 private:
  std::size_t in_ = 0, hid_ = 0;
  Buffer params_, grads_;
  // caches per step
  std::vector<Mat> xh_, gates_, c_, tanh_c_, h_;
};

}  // namespace slicing::nn
