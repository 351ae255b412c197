#include "nurse_roster/random.hpp"

namespace nrp {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view algorithm, std::uint64_t population,
                          std::uint64_t repeat) {
  // FNV-1a over the algorithm name, then mix in the numeric coordinates.
  std::uint64_t tag = 0xcbf29ce484222325ULL;
  for (unsigned char c : algorithm) {
    tag ^= c;
    tag *= 0x100000001b3ULL;
  }
  std::uint64_t h = splitmix64(base_seed);
  h = splitmix64(h ^ tag);
  h = splitmix64(h ^ population);
  return splitmix64(h ^ repeat);
}

}  // namespace nrp
