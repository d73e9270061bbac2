#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "m2m/contention.hpp"
#include "m2m/geometry.hpp"
#include "m2m/rng.hpp"

// Poisson network sampling, slotted-ALOHA roles, Rayleigh fading, SIR and
// per-block mutual information. Interference is noise-free (sigma^2 = 0), so
// transmit power cancels and is fixed to 1.

namespace m2m {

enum class Scheme { NC, RC, IRC };
enum class Selection { Argmax, Contention };

const char* to_string(Scheme s);
const char* to_string(Selection s);

struct NetworkConfig {
    double intensity = 1.0;      // lambda, nodes per unit area
    double map_p = 0.3;          // ALOHA medium-access probability
    double alpha = 4.0;          // path-loss exponent, > 2
    double rate = 3.0;           // code rate R, bits/s/Hz
    int diversity = 1;           // M, blocks combined to decode; NC forces 1
    Scheme scheme = Scheme::NC;
    double window_radius = 0.0;  // simulation disc radius; 0 -> 20/sqrt(lambda)
    std::uint64_t seed = 1;
    int retry_cap = 10;          // retransmissions per hop before freezing
    Selection selection = Selection::Argmax;
    ContentionConfig contention{};
    // Adds the expected interference from the (infinite) field beyond the
    // window as a deterministic term, removing the truncation bias against
    // the closed-form success probability.
    bool tail_compensation = true;

    double effective_window_radius() const;
    void validate() const;  // throws std::invalid_argument
};

struct NetworkRealization {
    std::vector<Vec2> points;
    std::size_t source_index = 0;
    // Stable per-node RNG identities; roles and fading are keyed by these so
    // that a realization restricted to a subwindow keeps its randomness.
    // Empty means identity (ids[i] == i).
    std::vector<std::uint32_t> rng_ids;

    std::size_t size() const { return points.size(); }
    std::uint32_t rng_id(std::size_t i) const {
        return rng_ids.empty() ? static_cast<std::uint32_t>(i) : rng_ids[i];
    }
};

// Poisson-count points uniform in the disc, source appended at the origin.
// Rejects windows with expected node count < 100.
NetworkRealization sample_network(const NetworkConfig& config, rng::Stream& stream);

// ALOHA roles and fading for one slot. Fading gains are materialized lazily
// from the slot key; tests can pin explicit gains via `fading_override`.
struct SlotState {
    std::uint64_t key = 0;
    std::vector<std::uint8_t> transmit;  // role per node, 1 = Transmit
    std::size_t forced_tx = 0;

    using FadingMap = std::map<std::pair<std::uint64_t, std::uint64_t>, double>;
    std::shared_ptr<const FadingMap> fading_override;  // (tx_id, rx_id) -> |h|^2

    bool node_transmits(std::size_t i) const { return transmit[i] != 0; }

    // Unit-mean exponential power gain for the (tx, rx) link in this slot.
    double fading(std::uint64_t tx_id, std::uint64_t rx_id) const;
};

SlotState draw_slot(const NetworkRealization& real, const NetworkConfig& config,
                    std::size_t forced_tx, std::uint64_t slot_key);

// Deterministic mean interference from transmitters beyond the window
// (0 when tail compensation is off).
double tail_interference(const NetworkConfig& config);

inline constexpr double kSirInfinite = std::numeric_limits<double>::infinity();
inline constexpr double kDistanceFloor2 = 1e-18;  // squared floor, eps = 1e-9

// SIR at an arbitrary receive location from transmitter `tx`, with all other
// Transmit-role nodes interfering. `rx_id` keys the receiver's fading draws;
// node receivers use their rng id, probe points use ids >= realization size.
// Returns +inf when the interference denominator is exactly zero.
double compute_sir(Vec2 rx, std::uint64_t rx_id, std::size_t tx,
                   const SlotState& slot, const NetworkRealization& real,
                   const NetworkConfig& config);

// Node-to-node convenience overload.
double compute_sir(std::size_t rx, std::size_t tx, const SlotState& slot,
                   const NetworkRealization& real, const NetworkConfig& config);

// I = log2(1 + SIR); +inf maps to +inf.
double mutual_information(double sir);

// Decode decision over the distinct stored block contributions: IRC sums MI,
// RC sums SIR inside the log, NC is the single-block special case. Throws if
// more than `diversity` entries are supplied.
bool accumulate_metric(std::span<const double> contributions, Scheme scheme,
                       double rate, int diversity);

}  // namespace m2m
