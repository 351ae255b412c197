#include "nurse_roster/aco.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "param_text.hpp"

namespace nrp {

namespace {

void check(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

/// tau^alpha * eta^beta for one option, with the cheap cases spelled out.
class ProportionalRule {
 public:
  explicit ProportionalRule(const AcoParams& params)
      : alpha_(params.alpha), heuristic_(std::pow(params.eta, params.beta)) {}

  void fill(std::span<const double> tau, std::span<const std::uint8_t> feasible, std::span<double> out) const {
    double sum = 0.0;
    for (std::size_t o = 0; o < tau.size(); ++o) {
      out[o] = feasible[o] ? weight(tau[o]) : 0.0;
      sum += out[o];
    }
    if (sum > 0.0 && std::isfinite(sum)) {
      for (auto& p : out) p /= sum;
      return;
    }
    // Under- or overflow: normalize in log space against the largest feasible term.
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t o = 0; o < tau.size(); ++o) {
      if (feasible[o]) top = std::max(top, alpha_ * std::log(tau[o]));
    }
    sum = 0.0;
    for (std::size_t o = 0; o < tau.size(); ++o) {
      out[o] = feasible[o] ? std::exp(alpha_ * std::log(tau[o]) - top) : 0.0;
      sum += out[o];
    }
    for (auto& p : out) p /= sum;
  }

 private:
  double weight(double tau) const {
    if (alpha_ == 1.0) return tau * heuristic_;
    if (alpha_ == 0.0) return heuristic_;
    return std::pow(tau, alpha_) * heuristic_;
  }

  double alpha_;
  double heuristic_;
};

std::size_t sample(std::span<const double> probabilities, double u) {
  double cumulative = 0.0;
  std::size_t last = 0;
  for (std::size_t o = 0; o < probabilities.size(); ++o) {
    if (probabilities[o] <= 0.0) continue;
    cumulative += probabilities[o];
    last = o;
    if (u < cumulative) return o;
  }
  return last;
}

void deposit(PheromoneMatrix& pheromone, const Schedule& schedule, const RosterInstance& instance, double amount) {
  for (std::size_t n = 0; n < schedule.nurse_count(); ++n) {
    for (std::size_t d = 0; d < schedule.day_count(); ++d) {
      pheromone.at(n, d, cell_to_option(schedule.at(n, d), instance)) += amount;
    }
  }
}

}  // namespace

std::string_view to_string(AcoVariant variant) {
  switch (variant) {
    case AcoVariant::basic: return "basic";
    case AcoVariant::acs: return "acs";
    case AcoVariant::maxmin: return "maxmin";
    case AcoVariant::rank: return "rank";
    case AcoVariant::elitist: return "elitist";
  }
  return "unknown";
}

AcoVariant aco_variant_from_string(std::string_view name) {
  for (auto v : {AcoVariant::basic, AcoVariant::acs, AcoVariant::maxmin, AcoVariant::rank, AcoVariant::elitist}) {
    if (name == to_string(v)) return v;
  }
  throw std::invalid_argument("unknown ACO variant '" + std::string(name) + "'");
}

void AcoParams::validate() const {
  check(alpha >= 0.0, "alpha must be non-negative");
  check(beta >= 0.0, "beta must be non-negative");
  check(eta > 0.0, "eta must be positive");
  check(zeta > 0.0 && zeta < 1.0, "zeta must lie in (0, 1)");
  check(phi > 0.0 && phi < 1.0, "phi must lie in (0, 1)");
  check(tau0 > 0.0, "tau0 must be positive");
  check(tau_min > 0.0 && tau_min <= tau0 && tau0 <= tau_max, "need 0 < tau_min <= tau0 <= tau_max");
  check(ants >= 1, "need at least one ant");
  check(effective_rank_count() <= ants, "rank_count must not exceed ants");
  check(effective_elite_weight() >= 0.0, "elite_weight must be non-negative");
  check(q_deposit > 0.0, "q_deposit must be positive");
}

void set_aco_param(AcoParams& p, std::string_view key, std::string_view value) {
  using namespace detail;
  if (key == "alpha") p.alpha = parse_double(key, value);
  else if (key == "beta") p.beta = parse_double(key, value);
  else if (key == "eta") p.eta = parse_double(key, value);
  else if (key == "zeta") p.zeta = parse_double(key, value);
  else if (key == "ants" || key == "population") p.ants = parse_size(key, value);
  else if (key == "iterations") p.iterations = parse_size(key, value);
  else if (key == "variant") p.variant = aco_variant_from_string(value);
  else if (key == "tau0") p.tau0 = parse_double(key, value);
  else if (key == "tau_min") p.tau_min = parse_double(key, value);
  else if (key == "tau_max") p.tau_max = parse_double(key, value);
  else if (key == "rank_count") p.rank_count = parse_size(key, value);
  else if (key == "elite_weight") p.elite_weight = parse_double(key, value);
  else if (key == "phi") p.phi = parse_double(key, value);
  else if (key == "q_deposit") p.q_deposit = parse_double(key, value);
  else if (key == "seed") p.seed = parse_u64(key, value);
  else throw std::invalid_argument("unknown ACO parameter '" + std::string(key) + "'");
}

PheromoneMatrix::PheromoneMatrix(std::size_t nurses, std::size_t days, std::size_t options, double initial)
    : nurses_(nurses), days_(days), options_(options), tau_(nurses * days * options, initial) {}

PheromoneMatrix init_pheromone(const RosterInstance& instance, const AcoParams& params) {
  params.validate();
  return PheromoneMatrix(instance.nurse_count(), instance.day_count(), instance.option_count(), params.tau0);
}

std::vector<double> selection_probabilities(std::span<const double> tau_row, std::span<const std::uint8_t> feasible,
                                            const AcoParams& params) {
  if (feasible.size() != tau_row.size()) throw std::invalid_argument("mask and pheromone row differ in length");
  if (std::none_of(feasible.begin(), feasible.end(), [](std::uint8_t f) { return f != 0; })) {
    throw std::invalid_argument("no feasible option");
  }
  std::vector<double> out(tau_row.size());
  ProportionalRule(params).fill(tau_row, feasible, out);
  return out;
}

Schedule construct_solution(PheromoneMatrix& pheromone, const RosterInstance& instance, const AcoParams& params,
                            Rng& rng) {
  if (pheromone.nurse_count() != instance.nurse_count() || pheromone.day_count() != instance.day_count() ||
      pheromone.option_count() != instance.option_count()) {
    throw std::invalid_argument("pheromone matrix does not match the instance");
  }
  const ProportionalRule rule(params);
  const std::size_t shifts = instance.shift_count();
  const std::size_t off = shifts;
  std::vector<std::uint8_t> feasible(instance.option_count());
  std::vector<double> probabilities(instance.option_count());
  Schedule schedule = empty_schedule(instance);

  auto night = [&](std::size_t n, std::size_t d) {
    const int cell = schedule.at(n, d);
    return cell != Schedule::kOff && instance.shift(cell).is_night;
  };

  for (std::size_t n = 0; n < instance.nurse_count(); ++n) {
    for (std::size_t d = 0; d < instance.day_count(); ++d) {
      const bool two_nights_before = d >= 2 && night(n, d - 1) && night(n, d - 2);
      for (std::size_t o = 0; o < shifts; ++o) {
        const int s = static_cast<int>(o);
        feasible[o] = instance.can_cover(n, s) && !(two_nights_before && instance.shift(s).is_night);
      }
      feasible[off] = 1;
      rule.fill(pheromone.row(n, d), feasible, probabilities);
      const std::size_t option = sample(probabilities, rng.uniform01());
      schedule.assign(n, d, option_to_cell(option, instance));
      if (params.variant == AcoVariant::acs) {
        double& tau = pheromone.at(n, d, option);
        tau = (1.0 - params.phi) * tau + params.phi * params.tau0;
      }
    }
  }
  return schedule;
}

void update_pheromone(PheromoneMatrix& pheromone, std::vector<EvaluatedSchedule>& ants,
                      const EvaluatedSchedule& best_so_far, const RosterInstance& instance, const AcoParams& params) {
  if (ants.empty()) throw std::invalid_argument("update_pheromone needs at least one ant");
  for (auto& tau : pheromone.values()) tau = std::max(tau * (1.0 - params.zeta), kPheromoneFloor);

  auto amount = [&](std::int64_t fitness) { return params.q_deposit / (1.0 + static_cast<double>(fitness)); };
  auto by_fitness = [&](std::size_t a, std::size_t b) { return ants[a].fitness < ants[b].fitness; };
  std::vector<std::size_t> order(ants.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  switch (params.variant) {
    case AcoVariant::basic:
      for (const auto& ant : ants) deposit(pheromone, ant.schedule, instance, amount(ant.fitness));
      break;
    case AcoVariant::acs:
      deposit(pheromone, best_so_far.schedule, instance, amount(best_so_far.fitness));
      break;
    case AcoVariant::maxmin: {
      const auto& best = ants[*std::min_element(order.begin(), order.end(), by_fitness)];
      deposit(pheromone, best.schedule, instance, amount(best.fitness));
      for (auto& tau : pheromone.values()) tau = std::clamp(tau, params.tau_min, params.tau_max);
      break;
    }
    case AcoVariant::rank: {
      std::stable_sort(order.begin(), order.end(), by_fitness);
      const std::size_t ranked = std::min(params.effective_rank_count(), ants.size());
      for (std::size_t k = 0; k < ranked; ++k) {
        const auto& ant = ants[order[k]];
        deposit(pheromone, ant.schedule, instance, static_cast<double>(ranked - k) * amount(ant.fitness));
      }
      break;
    }
    case AcoVariant::elitist: {
      // Last of the worst on ties, so the replaced slot is deterministic.
      std::size_t worst = 0;
      for (std::size_t i = 1; i < ants.size(); ++i) {
        if (ants[i].fitness >= ants[worst].fitness) worst = i;
      }
      ants[worst] = best_so_far;
      for (const auto& ant : ants) deposit(pheromone, ant.schedule, instance, amount(ant.fitness));
      deposit(pheromone, best_so_far.schedule, instance, params.effective_elite_weight() * amount(best_so_far.fitness));
      break;
    }
  }
}

RunResult run_aco(const RosterInstance& instance, const AcoParams& params, EvaluationExecutor& executor,
                  const LocalSearch& local_search, const PheromoneObserver& observer) {
  params.validate();
  if (params.iterations == 0) throw std::invalid_argument("run_aco needs at least one iteration");
  const auto start = std::chrono::steady_clock::now();

  PheromoneMatrix pheromone = init_pheromone(instance, params);
  Rng rng(params.seed);
  RunResult result;
  std::optional<EvaluatedSchedule> best;
  std::vector<Schedule> schedules(params.ants);
  std::vector<EvaluatedSchedule> ants(params.ants);

  for (std::size_t iteration = 0; iteration < params.iterations; ++iteration) {
    for (auto& schedule : schedules) {
      schedule = construct_solution(pheromone, instance, params, rng);
      if (local_search) local_search(schedule, instance);
    }
    const auto breakdowns = executor.evaluate_batch(schedules, instance);
    result.evaluations += schedules.size();
    for (std::size_t i = 0; i < schedules.size(); ++i) {
      ants[i] = {schedules[i], breakdowns[i].fitness};
      if (!best || ants[i].fitness < best->fitness) best = ants[i];
    }
    update_pheromone(pheromone, ants, *best, instance, params);
    if (observer) observer(iteration, pheromone);
    result.history.push_back(best->fitness);
  }

  result.best_schedule = best->schedule;
  result.best_fitness = best->fitness;
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace nrp
