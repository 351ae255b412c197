#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nurse_roster/aco.hpp"
#include "nurse_roster/pso.hpp"
#include "nurse_roster/roster.hpp"

namespace nrp {

enum class Algorithm { aco, pso };

std::string_view to_string(Algorithm algorithm);
Algorithm algorithm_from_string(std::string_view name);

struct RunStats {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;  // n - 1 divisor
  double sem = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Throws std::invalid_argument on an empty sample.
RunStats compute_stats(std::span<const double> samples);

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::aco;
  std::vector<std::size_t> population_sweep = {16, 32};
  std::size_t iterations = 1000;
  std::size_t repeats = 10;
  std::uint64_t base_seed = 1;
  std::size_t workers = 1;
  AcoParams aco;
  PsoParams pso;

  /// Throws std::invalid_argument for an empty sweep, zero repeats or an invalid parameter set.
  void validate() const;
};

/// Reads `key = value` lines. Known keys: algorithm, populations, iterations, repeats, seed, workers;
/// anything else is forwarded to the chosen algorithm's parameters.
ExperimentConfig parse_experiment_config(std::string_view text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Applies one `key=value` override to whichever algorithm the config selects.
void set_algorithm_param(ExperimentConfig& config, std::string_view key, std::string_view value);

struct RawRun {
  std::string algorithm;
  std::size_t population = 0;
  std::uint64_t seed = 0;
  std::int64_t best_fitness = 0;
  double wall_time_s = 0.0;

  bool operator==(const RawRun&) const = default;
};

struct AggregateRow {
  std::string algorithm;
  std::size_t population = 0;
  RunStats stats;
  double mean_time_s = 0.0;
};

struct ExperimentReport {
  std::vector<RawRun> runs;
  std::vector<AggregateRow> aggregates;
};

/// Solver parameters for one sweep cell.
AcoParams aco_params_for(const ExperimentConfig& config, std::size_t population, std::uint64_t seed);
PsoParams pso_params_for(const ExperimentConfig& config, std::size_t population, std::uint64_t seed);

/// Runs every (population, repeat) cell sequentially and aggregates per population.
ExperimentReport run_experiment(const ExperimentConfig& config, const RosterInstance& instance);

/// Rows grouped by (algorithm, population) in first-seen order.
std::vector<AggregateRow> aggregate_runs(std::span<const RawRun> runs);

inline constexpr std::string_view kRawCsvHeader = "algorithm,population,seed,best_fitness,wall_time_s";
inline constexpr std::string_view kAggregateCsvHeader = "algorithm,population,n,mean,stddev,sem,min,max,mean_time_s";

std::string raw_csv(std::span<const RawRun> runs);
std::string aggregate_csv(std::span<const AggregateRow> rows);
std::vector<RawRun> parse_raw_csv(std::string_view text);
std::vector<AggregateRow> parse_aggregate_csv(std::string_view text);

/// Writes runs.csv and summary.csv into `directory` (created if needed). Throws std::runtime_error.
void emit_csv(const ExperimentReport& report, const std::filesystem::path& directory);

/// Shortest text that reads back to the same double.
std::string format_double(double value);

}  // namespace nrp
