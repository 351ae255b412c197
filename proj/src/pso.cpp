#include "nurse_roster/pso.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "param_text.hpp"

namespace nrp {

namespace {

void check(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

std::size_t cell_count(const RosterInstance& instance) { return instance.nurse_count() * instance.day_count(); }

void require_shape(std::span<const double> grid, const RosterInstance& instance) {
  if (grid.size() != cell_count(instance)) throw std::invalid_argument("position grid does not match the instance");
}

bool improve_personal_best(Particle& particle, std::int64_t fitness) {
  if (fitness >= particle.pbest_fitness) return false;
  particle.pbest_fitness = fitness;
  particle.pbest_position = particle.position;
  return true;
}

void improve_global_best(Swarm& swarm, const Particle& particle) {
  if (particle.pbest_fitness < swarm.gbest_fitness) {
    swarm.gbest_fitness = particle.pbest_fitness;
    swarm.gbest_position = particle.pbest_position;
  }
}

void move(Particle& particle, const Swarm& swarm, const RosterInstance& instance, const PsoParams& params, Rng& rng) {
  particle.velocity = update_velocity(particle, swarm.gbest_position, params, instance, rng);
  particle.position = update_position(particle, instance);
}

}  // namespace

void PsoParams::validate() const {
  check(c1 >= 0.0 && c2 >= 0.0, "c1 and c2 must be non-negative");
  check(!(inertia && constriction), "inertia weight and constriction coefficient are mutually exclusive");
  check(!constriction || (chi > 0.0 && chi <= 1.0), "chi must lie in (0, 1]");
  check(particles >= 1, "need at least one particle");
}

void set_pso_param(PsoParams& p, std::string_view key, std::string_view value) {
  using namespace detail;
  if (key == "c1") p.c1 = parse_double(key, value);
  else if (key == "c2") p.c2 = parse_double(key, value);
  else if (key == "w") p.w = parse_double(key, value);
  else if (key == "chi") p.chi = parse_double(key, value);
  else if (key == "v_max") p.v_max = parse_double(key, value);
  else if (key == "particles" || key == "population") p.particles = parse_size(key, value);
  else if (key == "iterations") p.iterations = parse_size(key, value);
  else if (key == "clamping") p.clamping = parse_bool(key, value);
  else if (key == "inertia") p.inertia = parse_bool(key, value);
  else if (key == "constriction") p.constriction = parse_bool(key, value);
  else if (key == "asynchronous") p.asynchronous = parse_bool(key, value);
  else if (key == "seed") p.seed = parse_u64(key, value);
  else throw std::invalid_argument("unknown PSO parameter '" + std::string(key) + "'");
}

double position_upper_bound(const RosterInstance& instance) {
  return std::nextafter(static_cast<double>(instance.option_count()), 0.0);
}

Swarm init_swarm(const RosterInstance& instance, const PsoParams& params, EvaluationExecutor& executor, Rng& rng) {
  params.validate();
  const std::size_t cells = cell_count(instance);
  const double options = static_cast<double>(instance.option_count());
  const double v_max = params.effective_v_max(instance);

  Swarm swarm;
  swarm.particles.resize(params.particles);
  std::vector<Schedule> decoded;
  decoded.reserve(params.particles);
  for (auto& p : swarm.particles) {
    p.position.resize(cells);
    p.velocity.resize(cells);
    for (auto& x : p.position) x = std::min(rng.uniform(0.0, options), position_upper_bound(instance));
    for (auto& v : p.velocity) v = rng.uniform(-v_max, v_max);
    p.pbest_position = p.position;
    decoded.push_back(decode_position(p.position, instance));
  }
  const auto results = executor.evaluate_batch(decoded, instance);
  for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
    auto& p = swarm.particles[i];
    p.pbest_fitness = results[i].fitness;
    if (i == 0 || p.pbest_fitness < swarm.gbest_fitness) {
      swarm.gbest_fitness = p.pbest_fitness;
      swarm.gbest_position = p.pbest_position;
    }
  }
  return swarm;
}

Schedule decode_position(std::span<const double> position, const RosterInstance& instance) {
  require_shape(position, instance);
  const double upper = position_upper_bound(instance);
  const auto off_index = static_cast<int>(instance.shift_count());
  Schedule schedule = empty_schedule(instance);
  for (std::size_t n = 0; n < instance.nurse_count(); ++n) {
    for (std::size_t d = 0; d < instance.day_count(); ++d) {
      const double raw = position[n * instance.day_count() + d];
      const double value = std::isnan(raw) ? 0.0 : std::clamp(raw, 0.0, upper);
      const int index = static_cast<int>(std::floor(value));
      if (index != off_index && instance.can_cover(n, index)) schedule.assign(n, d, index);
    }
  }
  return schedule;
}

double velocity_component(double v, double x, double pbest, double gbest, VelocityDraw draw, const PsoParams& params,
                          double v_max) {
  const double momentum = params.inertia ? params.w : 1.0;
  double next = momentum * v + params.c1 * draw.r1 * (pbest - x) + params.c2 * draw.r2 * (gbest - x);
  if (params.constriction) next *= params.chi;
  if (params.clamping) next = std::clamp(next, -v_max, v_max);
  return next;
}

PositionGrid update_velocity(const Particle& particle, std::span<const double> gbest_position, const PsoParams& params,
                             const RosterInstance& instance, std::span<const VelocityDraw> draws) {
  const std::size_t cells = cell_count(instance);
  if (particle.position.size() != cells || particle.velocity.size() != cells ||
      particle.pbest_position.size() != cells || gbest_position.size() != cells || draws.size() != cells) {
    throw std::invalid_argument("velocity update shape mismatch");
  }
  const double v_max = params.effective_v_max(instance);
  PositionGrid next(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    next[i] = velocity_component(particle.velocity[i], particle.position[i], particle.pbest_position[i],
                                 gbest_position[i], draws[i], params, v_max);
  }
  return next;
}

PositionGrid update_velocity(const Particle& particle, std::span<const double> gbest_position, const PsoParams& params,
                             const RosterInstance& instance, Rng& rng) {
  std::vector<VelocityDraw> draws(cell_count(instance));
  for (auto& draw : draws) {
    draw.r1 = rng.uniform01();
    draw.r2 = rng.uniform01();
  }
  return update_velocity(particle, gbest_position, params, instance, draws);
}

PositionGrid update_position(const Particle& particle, const RosterInstance& instance) {
  require_shape(particle.position, instance);
  require_shape(particle.velocity, instance);
  const double upper = position_upper_bound(instance);
  PositionGrid next(particle.position.size());
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] = std::clamp(position_component(particle.position[i], particle.velocity[i]), 0.0, upper);
  }
  return next;
}

void step_swarm(Swarm& swarm, const RosterInstance& instance, const PsoParams& params, EvaluationExecutor& executor,
                Rng& rng, std::size_t* evaluations) {
  std::vector<Schedule> decoded;
  decoded.reserve(swarm.particles.size());
  for (const auto& p : swarm.particles) decoded.push_back(decode_position(p.position, instance));
  const auto results = executor.evaluate_batch(decoded, instance);
  if (evaluations != nullptr) *evaluations += decoded.size();

  if (params.asynchronous) {
    for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
      auto& p = swarm.particles[i];
      if (improve_personal_best(p, results[i].fitness)) improve_global_best(swarm, p);
      move(p, swarm, instance, params, rng);
    }
    return;
  }
  for (std::size_t i = 0; i < swarm.particles.size(); ++i) improve_personal_best(swarm.particles[i], results[i].fitness);
  for (const auto& p : swarm.particles) improve_global_best(swarm, p);
  for (auto& p : swarm.particles) move(p, swarm, instance, params, rng);
}

RunResult run_pso(const RosterInstance& instance, const PsoParams& params, EvaluationExecutor& executor) {
  params.validate();
  if (params.iterations == 0) throw std::invalid_argument("run_pso needs at least one iteration");
  const auto start = std::chrono::steady_clock::now();

  Rng rng(params.seed);
  RunResult result;
  Swarm swarm = init_swarm(instance, params, executor, rng);
  result.evaluations = swarm.particles.size();
  for (std::size_t iteration = 0; iteration < params.iterations; ++iteration) {
    step_swarm(swarm, instance, params, executor, rng, &result.evaluations);
    result.history.push_back(swarm.gbest_fitness);
  }
  result.best_schedule = decode_position(swarm.gbest_position, instance);
  result.best_fitness = swarm.gbest_fitness;
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace nrp
