#pragma once

#include <cmath>
#include <cstdint>

namespace srcloc {

/// Master seed for a run. Every random quantity in the library is derived
/// from one of these through derive_key, never from global state.
struct RngSeed {
  std::uint64_t master = 0;
};

namespace rng_detail {

/// SplitMix64 output function (Steele, Lea, Flood 2014 public-domain mixer).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

}  // namespace rng_detail

/// Stream tags keep unrelated random quantities on provably distinct
/// streams: noise and fault draws for the same (sample, sensor) never
/// collide, and adding consumers does not perturb existing ones.
enum class StreamTag : std::uint64_t {
  kDeploy = 1,    // sensor positions
  kNoise = 2,     // measurement noise, per (sample, sensor)
  kFault = 3,     // fault channel flips, per (sample, sensor)
  kTrial = 4,     // per-trial world seeds in the harness
  kField = 5,     // per-trial field deployment
  kPlace = 6,     // source placement
  kData = 7,      // dataset generation
  kKmeans = 8,    // k-means seeding
  kAssign = 9,    // iterative localization initial assignment
  kFuzz = 10,     // test-only fuzzing streams
};

/// Hashes (seed, tag, a, b) into a fresh stream key. Feeding each word
/// through the SplitMix64 finalizer with a distinct additive constant
/// gives independent, reproducible streams for any index tuple.
constexpr std::uint64_t derive_key(std::uint64_t seed, StreamTag tag,
                                   std::uint64_t a = 0, std::uint64_t b = 0) {
  using rng_detail::kGolden;
  using rng_detail::mix64;
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (static_cast<std::uint64_t>(tag) + kGolden));
  h = mix64(h ^ (a + 2 * kGolden));
  h = mix64(h ^ (b + 3 * kGolden));
  return h;
}

/// Counter-based SplitMix64 stream. Cheap to construct, so the library
/// makes one per logical random variable instead of sharing sequences.
class StreamRng {
 public:
  explicit StreamRng(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() {
    state_ += rng_detail::kGolden;
    return rng_detail::mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1); safe as a log() argument.
  double next_unit_open() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  /// Standard normal via Box-Muller. Two uniforms per draw, no state kept
  /// between draws, which keeps every value reproducible in isolation.
  double next_gaussian() {
    const double u1 = next_unit_open();
    const double u2 = next_unit();
    const double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  /// Bernoulli(p) with monotone coupling: for a fixed stream position the
  /// outcome is monotone in p, so raising a fault rate can only add flips.
  bool next_bernoulli(double p) { return next_unit() < p; }

  /// Unbiased integer in [0, n) by rejection.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

 private:
  std::uint64_t state_;
};

}  // namespace srcloc
