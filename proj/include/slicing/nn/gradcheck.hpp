#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace slicing::nn {

struct GradCheckResult {
  std::string name;
  double max_rel_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // coordinates whose perturbation crosses a ReLU kink
};

/// Relative error used by the checks: |a - n| / max(|a|, |n|, floor).
double relative_error(double analytic, double numeric, double floor = 1e-6);

/// Compares analytic gradients with central differences (step h) on
/// `configs` random dense nets, LSTM+head sequences and actor-into-critic
/// compositions.
std::vector<GradCheckResult> run_gradient_checks(std::size_t configs, std::uint64_t seed, double h = 1e-5);

}  // namespace slicing::nn
