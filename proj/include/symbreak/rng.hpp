#pragma once

#include <cassert>
#include <stdexcept>
#include <string>
#include <cstdint>
#include <random>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace symbreak {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// One global seed fans out to per-stage seeds; stages can be re-run
// independently without disturbing each other's streams.
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view stage) {
  return splitmix64(global_seed ^ fnv1a64(stage));
}

// mt19937_64 with hand-rolled bounded draws. The engine's output sequence is
// fixed by the standard; std::uniform_int_distribution is not, and generated
// artifacts must be byte-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    assert(bound > 0);
    const std::uint64_t rem = (UINT64_MAX % bound + 1) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = engine_();
      if (r <= UINT64_MAX - rem) return r % bound;
    }
  }

  // Uniform on [lo, hi], inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    assert(lo <= hi);
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // `count` distinct values from [0, pool_size), in draw order.
  std::vector<std::uint64_t> sample_distinct(std::uint64_t pool_size,
                                             std::uint64_t count) {
    if (count > pool_size)
      throw std::invalid_argument("cannot draw " + std::to_string(count) +
                                  " distinct values from a pool of " +
                                  std::to_string(pool_size));
    std::vector<std::uint64_t> out;
    out.reserve(count);
    std::unordered_set<std::uint64_t> seen;
    while (out.size() < count) {
      const std::uint64_t v = below(pool_size);
      if (seen.insert(v).second) out.push_back(v);
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace symbreak
