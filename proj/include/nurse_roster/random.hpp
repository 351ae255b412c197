#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace nrp {

/// Seeded stream shared by the solvers. Draws are platform-independent (no std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Stable per-cell seed: changing one coordinate never shifts the others' streams.
std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view algorithm, std::uint64_t population,
                          std::uint64_t repeat);

}  // namespace nrp
