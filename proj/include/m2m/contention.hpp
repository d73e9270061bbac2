#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

// Distributed P-bit pulse contention. Decoded relays quantize their progress
// into a P-bit code and resolve the maximum over a shared pulse channel, one
// bit per time unit, most significant bit first.

namespace m2m {

struct ContentionConfig {
    int bits = 10;        // P, contention period in time units
    double d_max = 0.0;   // quantization scale; must be resolved (>0) before use

    void validate() const;
};

struct Contender {
    std::size_t node = 0;
    double progress = 0.0;
    std::uint32_t code = 0;
    bool active = true;
};

struct ContentionOutcome {
    std::optional<std::size_t> winner;  // node index, or nullopt if no contenders
    int survivors = 0;                  // relays still active after P units
    int slots_used = 0;                 // always P
};

// floor(progress / d_max * (2^P - 1)) clamped to [0, 2^P - 1].
// Throws std::invalid_argument for nonpositive progress.
std::uint32_t encode_progress(double progress, const ContentionConfig& cfg);

// Runs the pulse protocol over the given contenders. Residual ties (equal
// codes survive all P units) are broken by lowest node index and surface in
// `survivors`.
ContentionOutcome run_contention(std::vector<Contender> contenders,
                                 const ContentionConfig& cfg);

}  // namespace m2m
