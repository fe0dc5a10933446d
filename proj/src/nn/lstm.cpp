#include "slicing/nn/lstm.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace slicing::nn {

namespace {

Mat sigmoid(const Mat& z) { return (1.0 / (1.0 + (-z.array()).exp())).matrix(); }

}  // namespace

Lstm::Lstm(std::size_t input, std::size_t hidden, std::mt19937_64& rng) : in_(input), hid_(hidden) {
  if (input == 0 || hidden == 0) throw std::invalid_argument("LSTM sizes must be positive");
  const std::size_t nw = 4 * hid_ * (in_ + hid_);
  params_.assign(nw + 4 * hid_, 0.0);
  grads_.assign(params_.size(), 0.0);
  const double bound = 1.0 / std::sqrt(static_cast<double>(in_ + hid_));
  std::uniform_real_distribution<double> d(-bound, bound);
  for (std::size_t i = 0; i < nw; ++i) params_[i] = d(rng);
  for (std::size_t j = 0; j < hid_; ++j) params_[nw + hid_ + j] = 1.0;  // forget gate
}

std::string Lstm::shape() const {
  std::ostringstream os;
  os << "lstm:" << in_ << ':' << hid_;
  return os.str();
}

void Lstm::zero_grad() { std::fill(grads_.begin(), grads_.end(), 0.0); }

MatMap Lstm::weight() { return MatMap(params_.data(), Eigen::Index(4 * hid_), Eigen::Index(in_ + hid_)); }
ConstMatMap Lstm::weight() const {
  return ConstMatMap(params_.data(), Eigen::Index(4 * hid_), Eigen::Index(in_ + hid_));
}
VecMap Lstm::bias() { return VecMap(params_.data() + 4 * hid_ * (in_ + hid_), Eigen::Index(4 * hid_)); }
ConstVecMap Lstm::bias() const {
  return ConstVecMap(params_.data() + 4 * hid_ * (in_ + hid_), Eigen::Index(4 * hid_));
}

Lstm::State Lstm::zero_state(std::size_t batch) const {
  return State{Mat::Zero(Eigen::Index(hid_), Eigen::Index(batch)), Mat::Zero(Eigen::Index(hid_), Eigen::Index(batch))};
}

const std::vector<Mat>& Lstm::forward(const std::vector<Mat>& xs) {
  const std::size_t T = xs.size();
  xh_.resize(T);
  gates_.resize(T);
  c_.resize(T);
  tanh_c_.resize(T);
  h_.resize(T);
  if (T == 0) return h_;
  const Eigen::Index B = xs.front().cols();
  const Eigen::Index H = Eigen::Index(hid_);
  Mat h = Mat::Zero(H, B), c = Mat::Zero(H, B);
  for (std::size_t t = 0; t < T; ++t) {
    if (static_cast<std::size_t>(xs[t].rows()) != in_ || xs[t].cols() != B)
      throw std::invalid_argument("LSTM input has the wrong shape");
    xh_[t].resize(Eigen::Index(in_) + H, B);
    xh_[t].topRows(Eigen::Index(in_)) = xs[t];
    xh_[t].bottomRows(H) = h;
    Mat z = weight() * xh_[t];
    z.colwise() += bias();
    Mat g(4 * H, B);
    g.topRows(3 * H) = sigmoid(z.topRows(3 * H));
    g.bottomRows(H) = z.bottomRows(H).array().tanh().matrix();
    c = (g.middleRows(H, H).array() * c.array() + g.topRows(H).array() * g.bottomRows(H).array()).matrix();
    tanh_c_[t] = c.array().tanh().matrix();
    h = (g.middleRows(2 * H, H).array() * tanh_c_[t].array()).matrix();
    gates_[t] = std::move(g);
    c_[t] = c;
    h_[t] = h;
  }
  return h_;
}

std::vector<Mat> Lstm::backward(const std::vector<Mat>& dhs, std::size_t truncation) {
  const std::size_t T = h_.size();
  if (dhs.size() != T) throw std::invalid_argument("one upstream gradient per step");
  std::vector<Mat> dxs(T);
  if (T == 0) return dxs;
  const Eigen::Index B = h_.front().cols();
  const Eigen::Index H = Eigen::Index(hid_);
  MatMap gw(grads_.data(), 4 * H, Eigen::Index(in_) + H);
  VecMap gb(grads_.data() + 4 * hid_ * (in_ + hid_), 4 * H);
  Mat dh_next = Mat::Zero(H, B), dc_next = Mat::Zero(H, B);
  for (std::size_t t = T; t-- > 0;) {
    if (truncation > 0 && (t + 1) % truncation == 0 && t + 1 != T) {
      dh_next.setZero();
      dc_next.setZero();
    }
    const Mat& g = gates_[t];
    const auto i = g.topRows(H).array();
    const auto f = g.middleRows(H, H).array();
    const auto o = g.middleRows(2 * H, H).array();
    const auto cand = g.bottomRows(H).array();
    const Mat c_prev = t > 0 ? c_[t - 1] : Mat::Zero(H, B);

    const Mat dh = dhs[t] + dh_next;
    const Mat dc = (dc_next.array() + dh.array() * o * (1.0 - tanh_c_[t].array().square())).matrix();
    Mat dz(4 * H, B);
    dz.topRows(H) = (dc.array() * cand * i * (1.0 - i)).matrix();
    dz.middleRows(H, H) = (dc.array() * c_prev.array() * f * (1.0 - f)).matrix();
    dz.middleRows(2 * H, H) = (dh.array() * tanh_c_[t].array() * o * (1.0 - o)).matrix();
    dz.bottomRows(H) = (dc.array() * i * (1.0 - cand.square())).matrix();

    gw.noalias() += dz * xh_[t].transpose();
    gb += dz.rowwise().sum();
    const Mat dxh = weight().transpose() * dz;
    dxs[t] = dxh.topRows(Eigen::Index(in_));
    dh_next = dxh.bottomRows(H);
    dc_next = (dc.array() * f).matrix();
  }
  return dxs;
}

const Mat& Lstm::step(const Mat& x, State& s) const {
  const Eigen::Index H = Eigen::Index(hid_);
  Mat xh(Eigen::Index(in_) + H, x.cols());
  xh.topRows(Eigen::Index(in_)) = x;
  xh.bottomRows(H) = s.h;
  Mat z = weight() * xh;
  z.colwise() += bias();
  const Mat gs = sigmoid(z.topRows(3 * H));
  const Mat cand = z.bottomRows(H).array().tanh().matrix();
  s.c = (gs.middleRows(H, H).array() * s.c.array() + gs.topRows(H).array() * cand.array()).matrix();
  s.h = (gs.bottomRows(H).array() * s.c.array().tanh()).matrix();
  return s.h;
}

}  // namespace slicing::nn
