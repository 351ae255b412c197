#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "nurse_roster/aco.hpp"
#include "nurse_roster/constraints.hpp"
#include "nurse_roster/executor.hpp"
#include "nurse_roster/experiment.hpp"
#include "nurse_roster/pso.hpp"

namespace nrp::cli {

namespace {

/// Raised for bad flags or parameter values; maps to kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<std::string, std::string> split_param(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void print_breakdown(const PenaltyBreakdown& b, const RosterInstance& instance, std::ostream& out) {
  const auto& weights = instance.constraints().weights;
  for (std::size_t k = 0; k < kSoftConstraintCount; ++k) {
    const auto id = static_cast<SoftConstraint>(k);
    std::string label = soft_constraint_label(id);
    label.resize(5, ' ');
    std::string name(soft_constraint_name(id));
    name.resize(36, ' ');
    out << label << name << "violations=" << b.violations[k] << " weight=" << weights[k]
        << " penalty=" << b.weighted[k] << '\n';
  }
  out << "HC1  three consecutive nights           violations=" << b.hard.three_consecutive_nights << '\n';
  out << "HC2  more than one shift per day        violations=" << b.hard.double_assignments << '\n';
  out << "HC3  days over the blank limit          violations=" << b.hard.blank_limit_days << '\n';
  out << "HC4  skill mismatches                   violations=" << b.hard.skill_mismatches << '\n';
  out << "soft_total = " << b.total << '\n';
  out << "hard_penalty = " << b.hard_penalty << '\n';
  out << "fitness = " << b.fitness << '\n';
  out << "feasible = " << (b.hard.feasible() ? "yes" : "no") << '\n';
}

nlohmann::json breakdown_json(const PenaltyBreakdown& b) {
  nlohmann::json soft = nlohmann::json::object();
  for (std::size_t k = 0; k < kSoftConstraintCount; ++k) {
    soft[soft_constraint_label(static_cast<SoftConstraint>(k))] = {{"violations", b.violations[k]},
                                                                   {"penalty", b.weighted[k]}};
  }
  return {{"soft", soft},
          {"hard",
           {{"HC1", b.hard.three_consecutive_nights},
            {"HC2", b.hard.double_assignments},
            {"HC3", b.hard.blank_limit_days},
            {"HC4", b.hard.skill_mismatches}}},
          {"soft_total", b.total},
          {"hard_penalty", b.hard_penalty},
          {"fitness", b.fitness},
          {"feasible", b.hard.feasible()}};
}

struct SolveOptions {
  std::string instance;
  std::string algorithm = "aco";
  std::vector<std::string> params;
  std::uint64_t seed = 1;
  std::size_t workers = 0;
  std::string out;
};

struct BenchOptions {
  std::string instance;
  std::string config;
  std::string out = "bench_out";
  std::size_t workers = 0;
};

struct CheckOptions {
  std::string instance;
  std::string roster;
  bool json = false;
};

std::size_t resolve_workers(std::size_t flag) {
  if (flag > 0) return flag;
  try {
    return workers_from_environment(1);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int solve(const SolveOptions& options, std::ostream& out) {
  Algorithm algorithm{};
  AcoParams aco;
  PsoParams pso;
  try {
    algorithm = algorithm_from_string(options.algorithm);
    aco.seed = pso.seed = options.seed;
    for (const auto& text : options.params) {
      auto [key, value] = split_param(text);
      if (algorithm == Algorithm::aco) set_aco_param(aco, key, value);
      else set_pso_param(pso, key, value);
    }
    if (algorithm == Algorithm::aco) aco.validate();
    else pso.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const RosterInstance instance = load_instance_file(options.instance);
  EvaluationExecutor executor(ExecutorConfig{resolve_workers(options.workers)});
  const RunResult result = algorithm == Algorithm::aco ? run_aco(instance, aco, executor) : run_pso(instance, pso, executor);
  const PenaltyBreakdown breakdown = evaluate(result.best_schedule, instance);

  std::ostringstream report;
  report << "# algorithm = " << to_string(algorithm);
  if (algorithm == Algorithm::aco) report << " (" << to_string(aco.variant) << ")";
  report << "\n# seed = " << options.seed << "\n# best_fitness = " << result.best_fitness
         << "\n# soft_total = " << breakdown.total << "\n# hard_violations = " << breakdown.hard.total()
         << "\n# evaluations = " << result.evaluations << "\n# wall_time_s = " << format_double(result.wall_time)
         << '\n';
  report << serialize_roster(result.best_schedule, instance);

  if (options.out.empty()) {
    out << report.str();
  } else {
    std::ofstream file(options.out, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot write '" + options.out + "'");
    file << report.str();
    out << "best_fitness = " << result.best_fitness << "\nroster written to " << options.out << '\n';
  }
  return kExitOk;
}

int bench(const BenchOptions& options, std::ostream& out) {
  ExperimentConfig config;
  try {
    config = load_experiment_config(options.config);
    if (options.workers > 0) config.workers = options.workers;
    else if (std::getenv("NRP_WORKERS") != nullptr) config.workers = resolve_workers(0);
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const RosterInstance instance = load_instance_file(options.instance);
  const ExperimentReport report = run_experiment(config, instance);
  try {
    emit_csv(report, options.out);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  out << aggregate_csv(report.aggregates);
  return kExitOk;
}

int check(const CheckOptions& options, std::ostream& out) {
  const RosterInstance instance = load_instance_file(options.instance);
  const Schedule schedule = parse_roster(read_text(options.roster), instance);
  const PenaltyBreakdown breakdown = evaluate(schedule, instance);
  if (options.json) out << breakdown_json(breakdown).dump(2) << '\n';
  else print_breakdown(breakdown, instance, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nurse rostering with ant colony and particle swarm optimization"};
  app.require_subcommand(1);

  SolveOptions solve_options;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance and print the best roster");
  solve_cmd->add_option("--instance", solve_options.instance, "Instance file")->required();
  solve_cmd->add_option("--algorithm", solve_options.algorithm, "aco or pso")->check(CLI::IsMember({"aco", "pso"}));
  solve_cmd->add_option("--param", solve_options.params, "Solver parameter override key=value (repeatable)");
  solve_cmd->add_option("--seed", solve_options.seed, "Random seed");
  solve_cmd->add_option("--workers", solve_options.workers, "Evaluation workers (default: NRP_WORKERS or 1)");
  solve_cmd->add_option("--out", solve_options.out, "Write the roster here instead of stdout");

  BenchOptions bench_options;
  auto* bench_cmd = app.add_subcommand("bench", "Run a population sweep and write CSV results");
  bench_cmd->add_option("--instance", bench_options.instance, "Instance file")->required();
  bench_cmd->add_option("--config", bench_options.config, "Experiment config (key = value lines)")->required();
  bench_cmd->add_option("--out", bench_options.out, "Output directory for runs.csv and summary.csv");
  bench_cmd->add_option("--workers", bench_options.workers, "Evaluation workers (overrides the config)");

  CheckOptions check_options;
  auto* check_cmd = app.add_subcommand("check", "Evaluate a roster against an instance");
  check_cmd->add_option("--instance", check_options.instance, "Instance file")->required();
  check_cmd->add_option("--roster", check_options.roster, "Roster file")->required();
  check_cmd->add_flag("--json", check_options.json, "Emit JSON");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return solve(solve_options, out);
    if (bench_cmd->parsed()) return bench(bench_options, out);
    return check(check_options, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InstanceError& e) {
    err << "instance error: " << e.what() << '\n';
    return kExitInstance;
  }
}

}  // namespace nrp::cli
