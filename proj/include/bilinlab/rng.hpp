#pragma once

// Seeded deterministic RNG helpers. Every randomized routine in the library
// derives its stream from a user seed through splitmix64 so that runs are
// reproducible bit for bit across platforms; std::mt19937 etc. are avoided
// because distribution implementations differ between standard libraries.

#include <cstdint>
#include <cmath>

namespace bilinlab {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return (next() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // standard normal, Box-Muller
  double normal() {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
};

// Stream seed for the i-th restart/trial of a routine.
inline std::uint64_t derive_seed(std::uint64_t user_seed, std::uint64_t index) {
  SplitMix64 g(user_seed ^ (0xa0761d6478bd642fULL + index * 0xe7037ed1a0b428dbULL));
  return g.next();
}

}  // namespace bilinlab
