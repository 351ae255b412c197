#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nurse_roster/executor.hpp"
#include "nurse_roster/random.hpp"
#include "nurse_roster/roster.hpp"
#include "nurse_roster/run_result.hpp"

namespace nrp {

enum class AcoVariant { basic, acs, maxmin, rank, elitist };

std::string_view to_string(AcoVariant variant);
/// Throws std::invalid_argument for unknown names.
AcoVariant aco_variant_from_string(std::string_view name);

struct AcoParams {
  double alpha = 1.0;
  double beta = 2.0;
  double eta = 0.01;
  double zeta = 0.5;  // evaporation rate
  std::size_t ants = 16;
  std::size_t iterations = 1000;
  AcoVariant variant = AcoVariant::elitist;
  double tau0 = 1.0;
  double tau_min = 0.01;
  double tau_max = 10.0;
  std::size_t rank_count = 0;  // 0: min(6, ants)
  std::optional<double> elite_weight;  // unset: ants
  double phi = 0.1;  // ACS local update rate
  double q_deposit = 100.0;
  std::uint64_t seed = 1;

  std::size_t effective_rank_count() const { return rank_count == 0 ? std::min<std::size_t>(6, ants) : rank_count; }
  double effective_elite_weight() const { return elite_weight.value_or(static_cast<double>(ants)); }

  /// Throws std::invalid_argument naming the offending parameter.
  void validate() const;
};

/// Sets one parameter from text (as given by `--param key=value`). Throws std::invalid_argument.
void set_aco_param(AcoParams& params, std::string_view key, std::string_view value);

/// Pheromone over (nurse, day, option) components; option index shift_count() is Off.
class PheromoneMatrix {
 public:
  PheromoneMatrix(std::size_t nurses, std::size_t days, std::size_t options, double initial);

  std::size_t nurse_count() const noexcept { return nurses_; }
  std::size_t day_count() const noexcept { return days_; }
  std::size_t option_count() const noexcept { return options_; }

  double& at(std::size_t nurse, std::size_t day, std::size_t option) {
    return tau_[(nurse * days_ + day) * options_ + option];
  }
  double at(std::size_t nurse, std::size_t day, std::size_t option) const {
    return tau_[(nurse * days_ + day) * options_ + option];
  }
  std::span<const double> row(std::size_t nurse, std::size_t day) const {
    return {tau_.data() + (nurse * days_ + day) * options_, options_};
  }
  std::span<double> values() noexcept { return tau_; }
  std::span<const double> values() const noexcept { return tau_; }

  bool operator==(const PheromoneMatrix&) const = default;

 private:
  std::size_t nurses_;
  std::size_t days_;
  std::size_t options_;
  std::vector<double> tau_;
};

/// Lowest value evaporation may leave behind, so entries stay strictly positive.
inline constexpr double kPheromoneFloor = 1e-300;

PheromoneMatrix init_pheromone(const RosterInstance& instance, const AcoParams& params);

/// Random-proportional rule p(o) ~ tau(o)^alpha * eta^beta over the feasible options.
/// `feasible` holds one flag per option; the result has 0 for masked options.
std::vector<double> selection_probabilities(std::span<const double> tau_row, std::span<const std::uint8_t> feasible,
                                            const AcoParams& params);

/// Option index <-> schedule cell value.
inline int option_to_cell(std::size_t option, const RosterInstance& instance) {
  return option == instance.shift_count() ? Schedule::kOff : static_cast<int>(option);
}
inline std::size_t cell_to_option(int cell, const RosterInstance& instance) {
  return cell == Schedule::kOff ? instance.shift_count() : static_cast<std::size_t>(cell);
}

/// One ant walk, nurse-major and day-minor. Options that break the skill rule or would complete three
/// consecutive nights are masked. Under ACS the chosen components receive the local update.
Schedule construct_solution(PheromoneMatrix& pheromone, const RosterInstance& instance, const AcoParams& params,
                            Rng& rng);

struct EvaluatedSchedule {
  Schedule schedule;
  std::int64_t fitness = 0;
};

/// Evaporates every component, then deposits q_deposit / (1 + fitness) for the variant's depositors.
/// For the elitist variant the worst ant in `ants` is replaced by `best_so_far` before depositing.
void update_pheromone(PheromoneMatrix& pheromone, std::vector<EvaluatedSchedule>& ants,
                      const EvaluatedSchedule& best_so_far, const RosterInstance& instance, const AcoParams& params);

/// Applied to each constructed schedule before evaluation. Unset means no local search.
using LocalSearch = std::function<void(Schedule&, const RosterInstance&)>;
/// Called after every pheromone update with the 0-based iteration index.
using PheromoneObserver = std::function<void(std::size_t, const PheromoneMatrix&)>;

RunResult run_aco(const RosterInstance& instance, const AcoParams& params, EvaluationExecutor& executor,
                  const LocalSearch& local_search = {}, const PheromoneObserver& observer = {});

}  // namespace nrp
