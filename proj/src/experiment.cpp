#include "nurse_roster/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "nurse_roster/random.hpp"
#include "param_text.hpp"

namespace nrp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) return s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_on(std::string_view s, char separator) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto at = s.find(separator, pos);
    out.push_back(s.substr(pos, at == std::string_view::npos ? std::string_view::npos : at - pos));
    if (at == std::string_view::npos) break;
    pos = at + 1;
  }
  return out;
}

std::vector<std::string_view> csv_lines(std::string_view text, std::string_view header) {
  std::vector<std::string_view> lines;
  for (auto line : split_on(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty() || lines.front() != header) throw std::invalid_argument("CSV header mismatch");
  lines.erase(lines.begin());
  return lines;
}

std::vector<std::string_view> csv_fields(std::string_view line, std::size_t expected) {
  auto fields = split_on(line, ',');
  if (fields.size() != expected) throw std::invalid_argument("CSV row has wrong field count: " + std::string(line));
  return fields;
}

std::int64_t parse_i64(std::string_view key, std::string_view value) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) throw detail::bad_value(key, value);
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string_view to_string(Algorithm algorithm) { return algorithm == Algorithm::aco ? "aco" : "pso"; }

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "aco") return Algorithm::aco;
  if (name == "pso") return Algorithm::pso;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "' (expected aco or pso)");
}

RunStats compute_stats(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("compute_stats needs at least one sample");
  // Welford's running update.
  RunStats stats;
  double mean = 0.0;
  double m2 = 0.0;
  stats.min = stats.max = samples.front();
  for (double x : samples) {
    ++stats.n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(stats.n);
    m2 += delta * (x - mean);
    stats.min = std::min(stats.min, x);
    stats.max = std::max(stats.max, x);
  }
  stats.mean = std::clamp(mean, stats.min, stats.max);
  stats.stddev = stats.n > 1 ? std::sqrt(m2 / static_cast<double>(stats.n - 1)) : 0.0;
  stats.sem = stats.stddev / std::sqrt(static_cast<double>(stats.n));
  return stats;
}

void ExperimentConfig::validate() const {
  if (population_sweep.empty()) throw std::invalid_argument("population sweep must not be empty");
  if (repeats == 0) throw std::invalid_argument("repeats must be at least 1");
  if (iterations == 0) throw std::invalid_argument("iterations must be at least 1");
  if (workers == 0) throw std::invalid_argument("workers must be at least 1");
  for (auto population : population_sweep) {
    if (population == 0) throw std::invalid_argument("population sizes must be positive");
    if (algorithm == Algorithm::aco) aco_params_for(*this, population, base_seed).validate();
    else pso_params_for(*this, population, base_seed).validate();
  }
}

void set_algorithm_param(ExperimentConfig& config, std::string_view key, std::string_view value) {
  if (config.algorithm == Algorithm::aco) set_aco_param(config.aco, key, value);
  else set_pso_param(config.pso, key, value);
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig config;
  struct Entry {
    std::string section;
    std::string key;
    std::string value;
  };
  std::vector<Entry> params;
  std::string section;
  std::size_t number = 0;
  for (auto line : split_on(text, '\n')) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "aco" && section != "pso") {
        throw std::invalid_argument("line " + std::to_string(number) + ": unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("line " + std::to_string(number) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = unquote(trim(line.substr(eq + 1)));
    if (section.empty() && key == "algorithm") {
      config.algorithm = algorithm_from_string(value);
    } else if (section.empty() && (key == "populations" || key == "population_sweep")) {
      config.population_sweep.clear();
      auto list = value;
      if (!list.empty() && list.front() == '[' && list.back() == ']') list = list.substr(1, list.size() - 2);
      for (auto item : split_on(list, ',')) {
        item = trim(item);
        if (!item.empty()) config.population_sweep.push_back(detail::parse_size(key, item));
      }
    } else if (section.empty() && key == "iterations") {
      config.iterations = detail::parse_size(key, value);
    } else if (section.empty() && key == "repeats") {
      config.repeats = detail::parse_size(key, value);
    } else if (section.empty() && key == "seed") {
      config.base_seed = detail::parse_u64(key, value);
    } else if (section.empty() && key == "workers") {
      config.workers = detail::parse_size(key, value);
    } else {
      params.push_back({section, std::string(key), std::string(value)});
    }
  }
  for (const auto& p : params) {
    const std::string& target = p.section.empty() ? std::string(to_string(config.algorithm)) : p.section;
    if (target == "aco") set_aco_param(config.aco, p.key, p.value);
    else set_pso_param(config.pso, p.key, p.value);
  }
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str());
}

AcoParams aco_params_for(const ExperimentConfig& config, std::size_t population, std::uint64_t seed) {
  AcoParams params = config.aco;
  params.ants = population;
  params.iterations = config.iterations;
  params.seed = seed;
  return params;
}

PsoParams pso_params_for(const ExperimentConfig& config, std::size_t population, std::uint64_t seed) {
  PsoParams params = config.pso;
  params.particles = population;
  params.iterations = config.iterations;
  params.seed = seed;
  return params;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const RosterInstance& instance) {
  config.validate();
  EvaluationExecutor executor(ExecutorConfig{config.workers});
  const auto name = std::string(to_string(config.algorithm));
  ExperimentReport report;
  for (auto population : config.population_sweep) {
    for (std::size_t r = 0; r < config.repeats; ++r) {
      const auto seed = derive_seed(config.base_seed, name, population, r);
      const RunResult result = config.algorithm == Algorithm::aco
                                   ? run_aco(instance, aco_params_for(config, population, seed), executor)
                                   : run_pso(instance, pso_params_for(config, population, seed), executor);
      report.runs.push_back({name, population, seed, result.best_fitness, result.wall_time});
    }
  }
  report.aggregates = aggregate_runs(report.runs);
  return report;
}

std::vector<AggregateRow> aggregate_runs(std::span<const RawRun> runs) {
  std::vector<AggregateRow> rows;
  std::vector<std::vector<double>> fitness;
  std::vector<double> time_sums;
  for (const auto& run : runs) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const AggregateRow& row) {
      return row.algorithm == run.algorithm && row.population == run.population;
    });
    std::size_t index = static_cast<std::size_t>(it - rows.begin());
    if (it == rows.end()) {
      rows.push_back({run.algorithm, run.population, {}, 0.0});
      fitness.emplace_back();
      time_sums.push_back(0.0);
    }
    fitness[index].push_back(static_cast<double>(run.best_fitness));
    time_sums[index] += run.wall_time_s;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].stats = compute_stats(fitness[i]);
    rows[i].mean_time_s = time_sums[i] / static_cast<double>(fitness[i].size());
  }
  return rows;
}

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) throw std::runtime_error("cannot format double");
  return std::string(buffer, ptr);
}

std::string raw_csv(std::span<const RawRun> runs) {
  std::string out(kRawCsvHeader);
  out += '\n';
  for (const auto& r : runs) {
    out += r.algorithm + ',' + std::to_string(r.population) + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.best_fitness) + ',' + format_double(r.wall_time_s) + '\n';
  }
  return out;
}

std::string aggregate_csv(std::span<const AggregateRow> rows) {
  std::string out(kAggregateCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.algorithm + ',' + std::to_string(r.population) + ',' + std::to_string(r.stats.n) + ',' +
           format_double(r.stats.mean) + ',' + format_double(r.stats.stddev) + ',' + format_double(r.stats.sem) + ',' +
           format_double(r.stats.min) + ',' + format_double(r.stats.max) + ',' + format_double(r.mean_time_s) + '\n';
  }
  return out;
}

std::vector<RawRun> parse_raw_csv(std::string_view text) {
  std::vector<RawRun> runs;
  for (auto line : csv_lines(text, kRawCsvHeader)) {
    const auto f = csv_fields(line, 5);
    runs.push_back({std::string(f[0]), detail::parse_size("population", f[1]), detail::parse_u64("seed", f[2]),
                    parse_i64("best_fitness", f[3]), detail::parse_double("wall_time_s", f[4])});
  }
  return runs;
}

std::vector<AggregateRow> parse_aggregate_csv(std::string_view text) {
  std::vector<AggregateRow> rows;
  for (auto line : csv_lines(text, kAggregateCsvHeader)) {
    const auto f = csv_fields(line, 9);
    AggregateRow row;
    row.algorithm = std::string(f[0]);
    row.population = detail::parse_size("population", f[1]);
    row.stats.n = detail::parse_size("n", f[2]);
    row.stats.mean = detail::parse_double("mean", f[3]);
    row.stats.stddev = detail::parse_double("stddev", f[4]);
    row.stats.sem = detail::parse_double("sem", f[5]);
    row.stats.min = detail::parse_double("min", f[6]);
    row.stats.max = detail::parse_double("max", f[7]);
    row.mean_time_s = detail::parse_double("mean_time_s", f[8]);
    rows.push_back(row);
  }
  return rows;
}

void emit_csv(const ExperimentReport& report, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw std::runtime_error("cannot create '" + directory.string() + "': " + ec.message());
  write_file(directory / "runs.csv", raw_csv(report.runs));
  write_file(directory / "summary.csv", aggregate_csv(report.aggregates));
}

}  // namespace nrp
