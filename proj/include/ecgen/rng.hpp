#pragma once

#include <cstdint>
#include <string_view>

namespace ecgen::rng {

// SplitMix64 finalizer (Steele, Lea & Flood mixing constants).
constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Stable 64-bit hash of (global_seed, id): FNV-1a accumulation of the id
// bytes into the seed, then the SplitMix64 finalizer. Same inputs give the
// same value on every platform.
std::uint64_t derive_stream_seed(std::uint64_t global_seed, std::string_view id);

// Deterministic 64-bit generator: the SplitMix64 sequence. All randomness in
// the pipeline flows through this type so parameter assignment is
// reproducible across runs, worker counts, and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_finalize(state_);
  }

  // Uniform index in [0, n) via 128-bit multiply-shift (no modulo bias worth
  // caring about at n <= a few thousand; bias < n / 2^64).
  std::uint64_t next_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double next_real(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t state_;
};

}  // namespace ecgen::rng
