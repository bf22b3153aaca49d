#pragma once

#include <array>
#include <cmath>
#include <cstdint>

// Self-contained random streams for reproducible dataset generation.
// std::<random> distributions are implementation-defined, so every draw used
// by the pipeline goes through this header instead. Sub-streams are derived
// by splitmix jumps, which makes work item k reproducible without replaying
// items 0..k-1.

namespace shapebench {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Stream salts so derived seeds for different purposes never collide.
enum class SeedSalt : std::uint64_t {
  Figure = 1,
  SceneAttempt = 2,
  Questions = 3,
  Noise = 4,
  NoiseGate = 5,
};

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// k-th output of the splitmix64 stream started at `seed`, in O(1).
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
  return splitmix64_mix(seed + (k + 1) * kGoldenGamma);
}

/// Seed for the `index`-th item of a salted sub-stream of `master`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                 SeedSalt salt = SeedSalt::Figure) {
  const std::uint64_t lane =
      splitmix64_mix(master ^ (static_cast<std::uint64_t>(salt) * 0xBF58476D1CE4E5B9ULL));
  return splitmix64_at(lane, index);
}

/// xoshiro256++ seeded via splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    for (int i = 0; i < 4; ++i) state_[i] = splitmix64_at(seed, static_cast<std::uint64_t>(i));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in [0, n). Exactly one draw (multiply-shift); bias < n * 2^-64.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

  bool bernoulli(double p) { return uniform() < p; }

  /// Box-Muller; the spare deviate is cached, so draws come in pairs.
  double normal(double mean, double sigma) {
    if (has_spare_) {
      has_spare_ = false;
      return mean + sigma * spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return mean + sigma * radius * std::cos(angle);
  }

  /// Seed material for an independent child stream; advances this stream.
  std::uint64_t split() { return splitmix64_mix(next_u64()); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace shapebench
