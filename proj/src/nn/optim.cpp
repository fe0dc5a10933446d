#include "slicing/nn/optim.hpp"

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slicing::nn {

Adam::Adam(std::size_t n, AdamParams p) : p_(p), m_(n, 0.0), v_(n, 0.0) {}

void Adam::step(std::span<double> params, std::span<const double> grads, double lr) {
  if (params.size() != m_.size() || grads.size() != m_.size())
    throw std::invalid_argument("Adam state does not match the parameter count");
  ++t_;
  const double c1 = 1.0 - std::pow(p_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(p_.beta2, static_cast<double>(t_));
  Eigen::Map<Eigen::ArrayXd> p(params.data(), Eigen::Index(params.size()));
  const Eigen::Map<const Eigen::ArrayXd> g(grads.data(), Eigen::Index(grads.size()));
  Eigen::Map<Eigen::ArrayXd> m(m_.data(), Eigen::Index(m_.size())), v(v_.data(), Eigen::Index(v_.size()));
  m = p_.beta1 * m + (1.0 - p_.beta1) * g;
  v = p_.beta2 * v + (1.0 - p_.beta2) * g * g;
  p -= lr * (m / c1) / ((v / c2).sqrt() + p_.eps);
}

void soft_update(std::span<double> target, std::span<const double> online, double tau) {
  if (target.size() != online.size()) throw std::invalid_argument("soft update size mismatch");
  Eigen::Map<Eigen::ArrayXd> t(target.data(), Eigen::Index(target.size()));
  t = tau * Eigen::Map<const Eigen::ArrayXd>(online.data(), Eigen::Index(online.size())) + (1.0 - tau) * t;
}

void require_finite(std::span<const double> values, const char* what) {
  if (!Eigen::Map<const Eigen::ArrayXd>(values.data(), Eigen::Index(values.size())).allFinite())
    throw std::runtime_error(std::string("non-finite value in ") + what);
}

}  // namespace slicing::nn
