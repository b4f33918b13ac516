#pragma once

#include <cstdint>

// Deterministic, platform-independent random numbers.
//
// Everything below is fixed-width integer arithmetic, so the same seed
// produces the same stream on any conforming compiler. std::mt19937 would
// be portable too, but the std distributions are not; we draw doubles from
// the top 53 bits ourselves.

namespace qnet::rng {

inline constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// SplitMix64 finalizer (Stafford mix 13).
constexpr uint64_t mix64(uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derives a child key from a seed and any number of integer parts.
// Used for per-sample seeds and per-pair edge draws; collisions between
// different part tuples are as unlikely as 64-bit hash collisions get.
template <class... Parts>
constexpr uint64_t derive(uint64_t seed, Parts... parts) {
  uint64_t h = mix64(seed);
  ((h = mix64(h ^ mix64(static_cast<uint64_t>(parts)))), ...);
  return h;
}

// Maps a 64-bit word to [0, 1) with 53 random bits.
constexpr double to_unit(uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

// One-shot uniform in [0, 1) from a derived key.
constexpr double unit_from_key(uint64_t key) { return to_unit(mix64(key)); }

// Sequential SplitMix64 stream.
class Stream {
 public:
  explicit Stream(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += kGolden);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform01() { return to_unit(next()); }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n), unbiased via rejection. n must be > 0.
  uint64_t below(uint64_t n) {
    const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const uint64_t x = next();
      if (x >= threshold) return x % n;
    }
  }

 private:
  uint64_t state_;
};

}  // namespace qnet::rng
