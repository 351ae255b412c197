#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nurse_roster/roster.hpp"

namespace nrp {

struct RunResult {
  Schedule best_schedule;
  std::int64_t best_fitness = 0;
  std::vector<std::int64_t> history;  // best-so-far fitness after each iteration
  double wall_time = 0.0;             // seconds
  std::size_t evaluations = 0;
};

/// Same result up to wall time, which is never reproducible.
inline bool same_outcome(const RunResult& a, const RunResult& b) {
  return a.best_schedule == b.best_schedule && a.best_fitness == b.best_fitness && a.history == b.history &&
         a.evaluations == b.evaluations;
}

}  // namespace nrp
