#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

// Counter-based random draws. Every random quantity in the simulator is a
// pure function of (master seed, episode, slot, purpose, counter), so results
// are reproducible bit-for-bit regardless of evaluation order or worker
// count, and parameter sweeps sharing a master seed see common random
// numbers.

namespace m2m::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// SplitMix64 output function (Stafford mix13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

// Derive a child key; used to build (seed -> episode -> slot -> ...) chains.
constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t index) noexcept {
    return mix64(key + kGolden * (index + 1));
}

// Random access into the stream identified by `key`.
constexpr std::uint64_t at(std::uint64_t key, std::uint64_t counter) noexcept {
    return mix64(key + kGolden * counter);
}

inline double to_u01(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double u01(std::uint64_t key, std::uint64_t counter) noexcept {
    return to_u01(at(key, counter));
}

// Unit-mean exponential (Rayleigh power fading).
inline double exp_unit(std::uint64_t key, std::uint64_t counter) noexcept {
    return -std::log1p(-u01(key, counter));
}

// Sequential generator over the same stream; satisfies
// UniformRandomBitGenerator so it can drive std:: distributions.
class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t key) noexcept : key_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept { return at(key_, counter_++); }

    double next_u01() noexcept { return to_u01((*this)()); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Purpose tags keep counter spaces of unrelated draws disjoint.
inline constexpr std::uint64_t kTagEpisode     = 0x45504953ull;  // episode chain
inline constexpr std::uint64_t kTagRealization = 0x5245414cull;  // point sampling
inline constexpr std::uint64_t kTagSlot        = 0x534c4f54ull;  // per-slot chain
inline constexpr std::uint64_t kTagRole        = 0x524f4c45ull;  // ALOHA roles
inline constexpr std::uint64_t kTagFading      = 0x46414445ull;  // fading gains
inline constexpr std::uint64_t kTagFinalEval   = 0x46494e4cull;  // optimizer re-evaluation

inline std::uint64_t episode_key(std::uint64_t seed, std::uint64_t episode) noexcept {
    return derive(mix64(seed ^ kTagEpisode), episode);
}

inline std::uint64_t slot_key(std::uint64_t episode_key, std::uint64_t slot) noexcept {
    return derive(episode_key ^ kTagSlot, slot);
}

}  // namespace m2m::rng
