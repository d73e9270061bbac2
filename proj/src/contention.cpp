#include "m2m/contention.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace m2m {

void ContentionConfig::validate() const {
    if (bits < 1) throw std::invalid_argument("ContentionConfig: bits must be >= 1");
    if (!(d_max > 0.0)) throw std::invalid_argument("ContentionConfig: d_max must be > 0");
}

std::uint32_t encode_progress(double progress, const ContentionConfig& cfg) {
    cfg.validate();
    if (!(progress > 0.0))
        throw std::invalid_argument("encode_progress: only positive-progress relays contend");
    const std::uint32_t top = (cfg.bits >= 32) ? 0xffffffffu : ((1u << cfg.bits) - 1u);
    const double scaled = std::floor(progress / cfg.d_max * static_cast<double>(top));
    if (scaled >= static_cast<double>(top)) return top;
    if (scaled <= 0.0) return 0;
    return static_cast<std::uint32_t>(scaled);
}

ContentionOutcome run_contention(std::vector<Contender> contenders,
                                 const ContentionConfig& cfg) {
    cfg.validate();
    ContentionOutcome out;
    out.slots_used = cfg.bits;
    if (contenders.empty()) return out;

    // One time unit per bit, most significant first: every active relay with
    // a 1 pulses; every active relay with a 0 listens and quits iff it heard
    // at least one pulse.
    for (int bit = cfg.bits - 1; bit >= 0; --bit) {
        const std::uint32_t mask = 1u << bit;
        bool pulse = false;
        for (const auto& c : contenders)
            if (c.active && (c.code & mask)) { pulse = true; break; }
        if (!pulse) continue;
        for (auto& c : contenders)
            if (c.active && !(c.code & mask)) c.active = false;
    }

    const Contender* winner = nullptr;
    for (const auto& c : contenders) {
        if (!c.active) continue;
        ++out.survivors;
        if (!winner || c.node < winner->node) winner = &c;  // residual ties: lowest index
    }
    if (winner) out.winner = winner->node;
    return out;
}

}  // namespace m2m
