#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "slicing/nn/tensor.hpp"

namespace slicing::nn {

enum class Activation { Identity, Tanh, Relu };

/// Dense feed-forward net, ReLU between layers. Parameters live in one flat
/// buffer (per layer: W column-major out x in, then b) so optimizers and target
/// updates can treat the whole net as a vector.
class Mlp {
 public:
  Mlp() = default;
  /// Uniform(+-1/sqrt(fan_in)) init; the last layer is additionally scaled by `final_scale`.
  Mlp(std::vector<std::size_t> sizes, Activation output, std::mt19937_64& rng, double final_scale = 1.0);

  std::size_t input_dim() const { return sizes_.front(); }
  std::size_t output_dim() const { return sizes_.back(); }
  std::size_t layer_count() const { return sizes_.size() - 1; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  Activation output_activation() const { return out_act_; }
  std::string shape() const;

  Buffer& params() { return params_; }
  const Buffer& params() const { return params_; }
  Buffer& grads() { return grads_; }
  const Buffer& grads() const { return grads_; }
  void zero_grad();

  MatMap weight(std::size_t layer);
  ConstMatMap weight(std::size_t layer) const;
  VecMap bias(std::size_t layer);
  ConstVecMap bias(std::size_t layer) const;

  /// Forward pass that keeps the intermediates for backward().
  const Mat& forward(const Mat& x);
  /// Accumulates parameter gradients for upstream dL/dy and returns dL/dx.
  Mat backward(const Mat& dy);
  /// Stateless forward.
  Mat predict(const Mat& x) const;

  /// Sign pattern of all hidden pre-activations from the last forward().
  std::vector<bool> activation_pattern() const;

 private:
  std::size_t w_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t b_offset(std::size_t layer) const {
    return offsets_[layer] + sizes_[layer + 1] * sizes_[layer];
  }

  std::vector<std::size_t> sizes_;
  Activation out_act_ = Activation::Identity;
  std::vector<std::size_t> offsets_;
  Buffer params_, grads_;
  std::vector<Mat> inputs_;  // input of each layer
  std::vector<Mat> pre_;     // pre-activation of each layer
  Mat out_;
};

Mat activate(const Mat& z, Activation a);

}  // namespace slicing::nn
