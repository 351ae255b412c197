#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "nurse_roster/executor.hpp"
#include "nurse_roster/random.hpp"
#include "nurse_roster/roster.hpp"
#include "nurse_roster/run_result.hpp"

namespace nrp {

struct PsoParams {
  double c1 = 1.5;
  double c2 = 1.5;
  double w = 0.9;
  double chi = 0.729;
  double v_max = 0.0;  // <= 0: half the option count
  std::size_t particles = 16;
  std::size_t iterations = 1000;
  bool clamping = true;
  bool inertia = true;
  bool constriction = false;
  bool asynchronous = false;  // refresh gbest after each particle instead of once per iteration
  std::uint64_t seed = 1;

  double effective_v_max(const RosterInstance& instance) const {
    return v_max > 0.0 ? v_max : static_cast<double>(instance.option_count()) / 2.0;
  }

  /// Throws std::invalid_argument; inertia and constriction are mutually exclusive.
  void validate() const;
};

void set_pso_param(PsoParams& params, std::string_view key, std::string_view value);

/// Continuous nurse x day grid; cell value floor(x) picks an option, the last option is Off.
using PositionGrid = std::vector<double>;

struct Particle {
  PositionGrid position;
  PositionGrid velocity;
  PositionGrid pbest_position;
  std::int64_t pbest_fitness = 0;
};

struct Swarm {
  std::vector<Particle> particles;
  PositionGrid gbest_position;
  std::int64_t gbest_fitness = 0;
};

/// Per-cell random coefficients for one velocity update.
struct VelocityDraw {
  double r1;
  double r2;
};

/// Uniform positions in [0, K) and velocities in [-v_max, v_max]; pbest is the start point.
Swarm init_swarm(const RosterInstance& instance, const PsoParams& params, EvaluationExecutor& executor, Rng& rng);

/// floor-decode each cell; skill conflicts are repaired to Off.
Schedule decode_position(std::span<const double> position, const RosterInstance& instance);

/// One velocity component: W*v + c1*r1*(pbest - x) + c2*r2*(gbest - x), scaled by chi under
/// constriction and clamped to [-v_max, v_max] under clamping. W is w with inertia, else 1.
double velocity_component(double v, double x, double pbest, double gbest, VelocityDraw draw, const PsoParams& params,
                          double v_max);
/// x + v, unclamped.
inline double position_component(double x, double v) { return x + v; }

PositionGrid update_velocity(const Particle& particle, std::span<const double> gbest_position, const PsoParams& params,
                             const RosterInstance& instance, Rng& rng);
/// Same update with caller-supplied draws, one per cell.
PositionGrid update_velocity(const Particle& particle, std::span<const double> gbest_position, const PsoParams& params,
                             const RosterInstance& instance, std::span<const VelocityDraw> draws);

/// x + v per cell, then clamped into [0, K) so decoding stays total.
PositionGrid update_position(const Particle& particle, const RosterInstance& instance);

/// Largest position value that still decodes to Off.
double position_upper_bound(const RosterInstance& instance);

/// Evaluate, refresh pbest (strict improvement) and gbest, then move every particle.
void step_swarm(Swarm& swarm, const RosterInstance& instance, const PsoParams& params, EvaluationExecutor& executor,
                Rng& rng, std::size_t* evaluations = nullptr);

RunResult run_pso(const RosterInstance& instance, const PsoParams& params, EvaluationExecutor& executor);

}  // namespace nrp
