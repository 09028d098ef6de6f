#include "fpnn/rng.hpp"

#include <cmath>
#include <numbers>

namespace fpnn {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t kind,
                          std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = master;
  std::uint64_t h = splitmix64(state);
  state ^= kind * 0x9E3779B97F4A7C15ull;
  h ^= splitmix64(state);
  state ^= a * 0xC2B2AE3D27D4EB4Full;
  h ^= splitmix64(state);
  state ^= b * 0x165667B19E3779F9ull;
  h ^= splitmix64(state);
  return h;
}

double Rng::gaussian() {
  // Box-Muller without second-value caching: the stream position stays a
  // pure function of the call count.
  double u1 = uniform_open();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace fpnn
