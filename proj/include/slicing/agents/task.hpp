#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "slicing/env.hpp"

namespace slicing {

struct TaskStep {
  double reward = 0.0;
  std::vector<double> observation;
  bool done = false;
  double utility = 0.0;
  double sum_rate_bps = 0.0;
  double cost = 0.0;
  std::size_t violations = 0;  // violated soft-constraint entries
  std::size_t accepted_users = 0;
};

/// Episodic control problem as seen by a learner.
class Task {
 public:
  virtual ~Task() = default;
  virtual std::size_t observation_dim() const = 0;
  virtual std::size_t action_dim() const = 0;
  virtual std::vector<double> reset(std::uint64_t seed) = 0;
  virtual TaskStep step(std::span<const double> action) = 0;
};

std::size_t count_violations(const Violations& v);
TaskStep to_task_step(const StepOutcome& out);

/// The slicing environment behind the Task interface.
class SlicingTask : public Task {
 public:
  explicit SlicingTask(SlicingEnv& env) : env_(env) {}
  std::size_t observation_dim() const override { return env_.observation_dim(); }
  std::size_t action_dim() const override { return env_.action_dim(); }
  std::vector<double> reset(std::uint64_t seed) override { return env_.reset(seed); }
  TaskStep step(std::span<const double> action) override { return to_task_step(env_.step(action)); }

 private:
  SlicingEnv& env_;
};

}  // namespace slicing
