#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace svps {

// splitmix64 finalizer; good avalanche, used for seed derivation.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t mix_seed(std::uint64_t acc, std::uint64_t v) {
  return splitmix64(acc ^ (splitmix64(v) + 0x9e3779b97f4a7c15ull + (acc << 6) + (acc >> 2)));
}

// Hierarchical stream derivation: every replication gets a seed that is a
// pure function of (master seed, coordinate tuple), so results do not depend
// on scheduling or worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t c : coords) h = mix_seed(h, c);
  return h;
}

// Coordinate tags for the experiment pipeline's seed hierarchy.
enum class SeedPhase : std::uint64_t {
  bisection = 1,
  refine = 2,
  baseline = 3,
  sweep = 4,
  manual = 5,
};

struct SeedScope {
  std::uint64_t master = 0;
  std::uint64_t block_len = 0;   // l
  std::uint64_t num_blocks = 0;  // m
  SeedPhase phase = SeedPhase::manual;
  std::uint64_t cell_a = 0;
  std::uint64_t cell_b = 0;

  std::uint64_t seed_for_run(std::uint64_t run_index) const {
    return derive_seed(master, {block_len, num_blocks,
                                static_cast<std::uint64_t>(phase), cell_a, cell_b, run_index});
  }
};

// Private per-run random stream. mt19937_64 has a standard-defined sequence,
// so identical seeds replay identically.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound), bound >= 1. Multiply-shift reduction; bias is
  // O(bound / 2^64) and irrelevant at simulation scale.
  std::uint32_t below(std::uint32_t bound) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace svps
