#pragma once

#include <cstdint>
#include <random>

namespace pforest {

// Counter-based stream derivation: replicate k of a master seed is
// reproducible in isolation as Rng(split_seed(master, k)).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index * 0xd6e8feb86659fd93ULL + 1));
}

// Deterministic across platforms: mt19937_64 has a pinned algorithm, and all
// range reduction is done by hand (std::uniform_int_distribution is not
// portable across standard libraries).
struct Rng {
  std::mt19937_64 gen;

  explicit Rng(std::uint64_t seed) : gen(splitmix64(seed ^ 0xa5a5a5a5a5a5a5a5ULL)) {}

  std::uint64_t u64() { return gen(); }

  // Uniform in [0, n), unbiased via rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t u;
    do {
      u = gen();
    } while (u >= limit);
    return u % n;
  }

  int pick(int n) { return (int)below((std::uint64_t)n); }

  // Exact Bernoulli(num/den).
  bool bernoulli(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
};

}  // namespace pforest
