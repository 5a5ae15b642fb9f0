#pragma once

#include <cstdint>
#include <limits>

namespace spinsim {

/// SplitMix64 finaliser (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Counter-based stream: word k of stream (seed, index) is mix64(key + (k + 1) * gamma),
/// key = mix64(mix64(seed) ^ mix64(index + gamma)). Each protocol round owns the stream
/// keyed by its round index, so results do not depend on how rounds are split across threads.
class CounterRng {
  public:
    using result_type = std::uint64_t;
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    constexpr CounterRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix64(mix64(seed) ^ mix64(stream + kGamma))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() {
        state_ += kGamma;
        return mix64(state_);
    }

    /// Uniform double on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

}  // namespace spinsim
