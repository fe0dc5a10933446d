#include "slicing/agents/task.hpp"

namespace slicing {

std::size_t count_violations(const Violations& v) {
  std::size_t n = 0;
  for (const ConstraintCheck* c : {&v.c4, &v.c7, &v.c8, &v.capacity})
    for (double s : c->slack)
      if (s < 0.0) ++n;
  return n;
}

TaskStep to_task_step(const StepOutcome& out) {
  TaskStep t;
  t.reward = out.reward;
  t.observation = out.observation;
  t.done = out.done;
  t.utility = out.evaluation.utility.total;
  t.sum_rate_bps = out.evaluation.rates.total_bps();
  t.cost = out.evaluation.utility.total_cost();
  t.violations = count_violations(out.evaluation.violations);
  t.accepted_users = out.evaluation.accepted_users();
  return t;
}

}  // namespace slicing
