#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "nurse_roster/constraints.hpp"
#include "nurse_roster/roster.hpp"

namespace nrp {

struct ExecutorConfig {
  std::size_t workers = 1;  // 1 evaluates on the calling thread
};

/// Reads NRP_WORKERS; falls back to `fallback` when unset. Throws std::invalid_argument on garbage.
std::size_t workers_from_environment(std::size_t fallback = 1);

/// Evaluation failure of one batch element.
class BatchEvaluationError : public std::runtime_error {
 public:
  BatchEvaluationError(std::size_t index, const std::string& message);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Master-slave fitness evaluation. The caller (master) hands over a whole batch and blocks;
/// a fixed pool of workers evaluates schedules and results come back in submission order.
/// Evaluation is pure, so results do not depend on the worker count.
class EvaluationExecutor {
 public:
  explicit EvaluationExecutor(ExecutorConfig config = {});
  ~EvaluationExecutor();

  EvaluationExecutor(const EvaluationExecutor&) = delete;
  EvaluationExecutor& operator=(const EvaluationExecutor&) = delete;

  std::size_t workers() const noexcept { return config_.workers; }

  std::vector<PenaltyBreakdown> evaluate_batch(std::span<const Schedule> schedules, const RosterInstance& instance);

 private:
  struct Batch {
    std::span<const Schedule> schedules;
    const RosterInstance* instance = nullptr;
    std::vector<PenaltyBreakdown>* results = nullptr;
    std::vector<std::string>* errors = nullptr;
    std::vector<char>* failed = nullptr;
    std::size_t next = 0;
    std::size_t finished = 0;
  };

  void worker_loop(std::stop_token stop);
  static void evaluate_one(Batch& batch, std::size_t index);

  ExecutorConfig config_;
  std::mutex mutex_;
  std::condition_variable_any work_ready_;
  std::condition_variable batch_done_;
  Batch batch_;
  std::size_t generation_ = 0;
  std::vector<std::jthread> threads_;
};

/// One-shot convenience wrapper around EvaluationExecutor.
std::vector<PenaltyBreakdown> evaluate_batch(std::span<const Schedule> schedules, const RosterInstance& instance,
                                             ExecutorConfig config = {});

/// Monotonic wall time of a single call, in seconds. No repetition or averaging.
double time_call(const std::function<void()>& workload);

/// Wall time of evaluating one batch through the executor.
double timing_probe(std::span<const Schedule> schedules, const RosterInstance& instance, EvaluationExecutor& executor);

}  // namespace nrp
