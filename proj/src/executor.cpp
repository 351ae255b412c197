#include "nurse_roster/executor.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>

namespace nrp {

std::size_t workers_from_environment(std::size_t fallback) {
  const char* value = std::getenv("NRP_WORKERS");
  if (value == nullptr || *value == '\0') return fallback;
  std::size_t used = 0;
  const std::string text(value);
  unsigned long parsed = 0;
  try {
    parsed = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || parsed == 0) throw std::invalid_argument("NRP_WORKERS must be a positive integer");
  return parsed;
}

BatchEvaluationError::BatchEvaluationError(std::size_t index, const std::string& message)
    : std::runtime_error("evaluation of batch element " + std::to_string(index) + " failed: " + message),
      index_(index) {}

EvaluationExecutor::EvaluationExecutor(ExecutorConfig config) : config_(config) {
  if (config_.workers == 0) throw std::invalid_argument("executor needs at least one worker");
  if (config_.workers > 1) {
    threads_.reserve(config_.workers);
    for (std::size_t i = 0; i < config_.workers; ++i) {
      threads_.emplace_back([this](std::stop_token stop) { worker_loop(stop); });
    }
  }
}

EvaluationExecutor::~EvaluationExecutor() {
  for (auto& t : threads_) t.request_stop();
  work_ready_.notify_all();
}

void EvaluationExecutor::evaluate_one(Batch& batch, std::size_t index) {
  try {
    (*batch.results)[index] = evaluate(batch.schedules[index], *batch.instance);
  } catch (const std::exception& e) {
    (*batch.errors)[index] = e.what();
    (*batch.failed)[index] = 1;
  }
}

void EvaluationExecutor::worker_loop(std::stop_token stop) {
  std::size_t seen = 0;
  std::unique_lock lock(mutex_);
  while (true) {
    if (!work_ready_.wait(lock, stop, [&] { return generation_ != seen; })) return;
    seen = generation_;
    while (batch_.next < batch_.schedules.size()) {
      const std::size_t index = batch_.next++;
      lock.unlock();
      evaluate_one(batch_, index);
      lock.lock();
      if (++batch_.finished == batch_.schedules.size()) batch_done_.notify_one();
    }
  }
}

std::vector<PenaltyBreakdown> EvaluationExecutor::evaluate_batch(std::span<const Schedule> schedules,
                                                                 const RosterInstance& instance) {
  std::vector<PenaltyBreakdown> results(schedules.size());
  if (schedules.empty()) return results;
  std::vector<std::string> errors(schedules.size());
  std::vector<char> failed(schedules.size(), 0);

  if (threads_.empty()) {
    Batch batch{schedules, &instance, &results, &errors, &failed};
    for (std::size_t i = 0; i < schedules.size(); ++i) evaluate_one(batch, i);
  } else {
    std::unique_lock lock(mutex_);
    batch_ = Batch{schedules, &instance, &results, &errors, &failed};
    ++generation_;
    work_ready_.notify_all();
    batch_done_.wait(lock, [&] { return batch_.finished == schedules.size(); });
    batch_ = Batch{};
  }

  if (auto it = std::find(failed.begin(), failed.end(), 1); it != failed.end()) {
    const auto index = static_cast<std::size_t>(it - failed.begin());
    throw BatchEvaluationError(index, errors[index]);
  }
  return results;
}

std::vector<PenaltyBreakdown> evaluate_batch(std::span<const Schedule> schedules, const RosterInstance& instance,
                                             ExecutorConfig config) {
  EvaluationExecutor executor(config);
  return executor.evaluate_batch(schedules, instance);
}

double time_call(const std::function<void()>& workload) {
  const auto start = std::chrono::steady_clock::now();
  workload();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double timing_probe(std::span<const Schedule> schedules, const RosterInstance& instance, EvaluationExecutor& executor) {
  return time_call([&] { executor.evaluate_batch(schedules, instance); });
}

}  // namespace nrp
