#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace degen {

/// Deterministic, counter-splittable pseudorandom generator.
///
/// The stream is SplitMix64: state advances by the golden-ratio increment
/// and each output is the splitmix finalizer of the new state. Sub-streams
/// are derived from the *root* seed (never from evolving state), keyed by a
/// label hash (FNV-1a) and an index, so
///   - the same seed always yields the same stream,
///   - substream(label, i) can be formed without consuming the parent, and
///   - per-point/per-sample parallel generation is order-independent.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : root_(seed), state_(seed) {}

  std::uint64_t seed() const { return root_; }

  std::uint64_t next_u64() {
    state_ += kGamma;
    return finalize(state_);
  }

  /// Uniform double in [0, 1), 53 random mantissa bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]: keeps log() finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Child generator keyed by (label, index), derived from the root seed.
  SeededRng substream(std::string_view label, std::uint64_t index) const {
    std::uint64_t key = finalize(root_ ^ finalize(fnv1a(label)));
    return SeededRng(finalize(key ^ (index + kGamma)));
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static constexpr std::uint64_t finalize(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  static constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return h;
  }

  std::uint64_t root_;
  std::uint64_t state_;
};

}  // namespace degen
