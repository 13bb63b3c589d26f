#pragma once

#include <cmath>
#include <cstdint>

namespace blockland {

// splitmix64 mixer, used to expand seeds into stream parameters.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// PCG32 (XSH-RR, pcg-random.org). Used instead of <random> engines +
// distributions: the standard leaves distribution algorithms
// implementation-defined, and run artifacts must replay bitwise across
// toolchains.
class Pcg32 {
 public:
  Pcg32() : Pcg32(0x853c49e6748fea9bULL, 0xda3e39cb94b95bdbULL) {}

  Pcg32(std::uint64_t seed, std::uint64_t stream) : state_(0), inc_((stream << 1u) | 1u) {
    next_u32();
    state_ += seed;
    next_u32();
  }

  std::uint32_t next_u32() {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return (hi << 32) | lo;
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n-1}, unbiased (rejection sampling).
  std::uint32_t uniform_int(std::uint32_t n) {
    const std::uint32_t threshold = (0u - n) % n;
    for (;;) {
      const std::uint32_t r = next_u32();
      if (r >= threshold) return r % n;
    }
  }

  // Standard normal via Box-Muller. Consumes exactly two uniforms per call;
  // no cached second value, so replay position is a pure function of call count.
  double normal() {
    const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

// Stream purposes. A run owns one base seed; every consumer of randomness
// gets its own PCG32 stream derived from (seed, purpose) so that parallel
// env stepping replays bitwise identical to sequential stepping.
namespace stream_id {
constexpr std::uint64_t kParamInit = 0;
constexpr std::uint64_t kShuffle = 1;
constexpr std::uint64_t kLearnerEnvBase = 100;   // + env index
constexpr std::uint64_t kOpponentEnvBase = 200;  // + env index
constexpr std::uint64_t kEvalVictim = 0;         // per-episode seed
constexpr std::uint64_t kEvalOpponent = 1;
constexpr std::uint64_t kHeatmap = 2;
}  // namespace stream_id

inline Pcg32 make_stream(std::uint64_t seed, std::uint64_t purpose) {
  return Pcg32(splitmix64(splitmix64(seed) ^ (purpose + 0x9e3779b97f4a7c15ULL)), splitmix64(purpose));
}

}  // namespace blockland
