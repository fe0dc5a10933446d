#include "slicing/nn/mlp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace slicing::nn {

Mat activate(const Mat& z, Activation a) {
  switch (a) {
    case Activation::Identity: return z;
    case Activation::Tanh: return z.array().tanh().matrix();
    case Activation::Relu: return z.cwiseMax(0.0);
  }
  return z;
}

namespace {

// dL/dz from dL/dy for y = act(z).
Mat activation_backward(const Mat& dy, const Mat& z, Activation a) {
  switch (a) {
    case Activation::Identity: return dy;
    case Activation::Tanh: return (dy.array() * (1.0 - z.array().tanh().square())).matrix();
    case Activation::Relu: return (dy.array() * (z.array() > 0.0).cast<double>()).matrix();
  }
  return dy;
}

}  // namespace

Mlp::Mlp(std::vector<std::size_t> sizes, Activation output, std::mt19937_64& rng, double final_scale)
    : sizes_(std::move(sizes)), out_act_(output) {
  if (sizes_.size() < 2) throw std::invalid_argument("an MLP needs at least input and output sizes");
  for (auto s : sizes_)
    if (s == 0) throw std::invalid_argument("layer sizes must be positive");
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    offsets_.push_back(total);
    total += sizes_[l + 1] * sizes_[l] + sizes_[l + 1];
  }
  params_.assign(total, 0.0);
  grads_.assign(total, 0.0);
  for (std::size_t l = 0; l < layer_count(); ++l) {
    double bound = 1.0 / std::sqrt(static_cast<double>(sizes_[l]));
    if (l + 1 == layer_count()) bound *= final_scale;
    std::uniform_real_distribution<double> d(-bound, bound);
    const std::size_t end = l + 1 < layer_count() ? offsets_[l + 1] : total;
    for (std::size_t i = offsets_[l]; i < end; ++i) params_[i] = d(rng);
  }
}

std::string Mlp::shape() const {
  std::ostringstream os;
  os << "mlp";
  for (auto s : sizes_) os << ':' << s;
  os << ':' << static_cast<int>(out_act_);
  return os.str();
}

void Mlp::zero_grad() { std::fill(grads_.begin(), grads_.end(), 0.0); }

MatMap Mlp::weight(std::size_t l) {
  return MatMap(params_.data() + w_offset(l), Eigen::Index(sizes_[l + 1]), Eigen::Index(sizes_[l]));
}
ConstMatMap Mlp::weight(std::size_t l) const {
  return ConstMatMap(params_.data() + w_offset(l), Eigen::Index(sizes_[l + 1]), Eigen::Index(sizes_[l]));
}
VecMap Mlp::bias(std::size_t l) { return VecMap(params_.data() + b_offset(l), Eigen::Index(sizes_[l + 1])); }
ConstVecMap Mlp::bias(std::size_t l) const {
  return ConstVecMap(params_.data() + b_offset(l), Eigen::Index(sizes_[l + 1]));
}

const Mat& Mlp::forward(const Mat& x) {
  if (static_cast<std::size_t>(x.rows()) != input_dim()) throw std::invalid_argument("MLP input has the wrong size");
  inputs_.resize(layer_count());
  pre_.resize(layer_count());
  Mat cur = x;
  for (std::size_t l = 0; l < layer_count(); ++l) {
    inputs_[l] = std::move(cur);
    pre_[l].noalias() = weight(l) * inputs_[l];
    pre_[l].colwise() += bias(l);
    cur = activate(pre_[l], l + 1 == layer_count() ? out_act_ : Activation::Relu);
  }
  out_ = std::move(cur);
  return out_;
}

Mat Mlp::backward(const Mat& dy) {
  if (pre_.empty()) throw std::logic_error("backward before forward");
  Mat grad = dy;
  for (std::size_t l = layer_count(); l-- > 0;) {
    const Mat dz = activation_backward(grad, pre_[l], l + 1 == layer_count() ? out_act_ : Activation::Relu);
    MatMap gw(grads_.data() + w_offset(l), Eigen::Index(sizes_[l + 1]), Eigen::Index(sizes_[l]));
    VecMap gb(grads_.data() + b_offset(l), Eigen::Index(sizes_[l + 1]));
    gw.noalias() += dz * inputs_[l].transpose();
    gb += dz.rowwise().sum();
    grad.noalias() = weight(l).transpose() * dz;
  }
  return grad;
}

Mat Mlp::predict(const Mat& x) const {
  if (static_cast<std::size_t>(x.rows()) != input_dim()) throw std::invalid_argument("MLP input has the wrong size");
  Mat cur = x;
  for (std::size_t l = 0; l < layer_count(); ++l) {
    Mat z = weight(l) * cur;
    z.colwise() += bias(l);
    cur = activate(z, l + 1 == layer_count() ? out_act_ : Activation::Relu);
  }
  return cur;
}

std::vector<bool> Mlp::activation_pattern() const {
  std::vector<bool> out;
  for (std::size_t l = 0; l + 1 < pre_.size(); ++l)
    for (Eigen::Index i = 0; i < pre_[l].size(); ++i) out.push_back(pre_[l].data()[i] > 0.0);
  return out;
}

}  // namespace slicing::nn
