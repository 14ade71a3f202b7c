#pragma once

#include <cstdint>
#include <random>

namespace empsup {

using Engine = std::mt19937_64;

// splitmix64 step: advances state and returns the next output word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Collapses (master, a, b) into one well-mixed 64-bit seed. Used to derive
// one independent stream per (master_seed, n, replication index); identical
// inputs always yield the identical stream regardless of thread scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  s ^= a;
  h ^= splitmix64(s);
  s ^= b;
  h ^= splitmix64(s);
  return h;
}

inline Engine make_stream(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b) {
  return Engine(derive_seed(master, a, b));
}

// Uniform draw on the open interval (0,1) as a dyadic rational k * 2^-53,
// k in [1, 2^53). Every such value u has an exactly representable complement
// 1 - u, which the reflection identities rely on.
inline double uniform_open01(Engine& eng) {
  for (;;) {
    const std::uint64_t k = eng() >> 11;
    if (k != 0) return static_cast<double>(k) * 0x1.0p-53;
  }
}

}  // namespace empsup
