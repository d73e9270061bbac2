#include "m2m/netmodel.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace m2m {

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::NC: return "NC";
        case Scheme::RC: return "RC";
        case Scheme::IRC: return "IRC";
    }
    return "?";
}

const char* to_string(Selection s) {
    return s == Selection::Argmax ? "argmax" : "contention";
}

double NetworkConfig::effective_window_radius() const {
    return window_radius > 0.0 ? window_radius : 20.0 / std::sqrt(intensity);
}

void NetworkConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("NetworkConfig: " + msg); };
    if (!(intensity > 0.0)) fail("intensity must be > 0");
    if (!(map_p > 0.0 && map_p < 1.0)) fail("map_p must lie in (0,1)");
    if (!(alpha > 2.0)) fail("alpha must be > 2 (interference diverges otherwise)");
    if (!(rate > 0.0)) fail("rate must be > 0");
    if (diversity < 1) fail("diversity must be >= 1");
    if (scheme == Scheme::NC && diversity != 1) fail("NC requires diversity M = 1");
    if (window_radius < 0.0) fail("window_radius must be positive (or 0 for default)");
    if (retry_cap < 0) fail("retry_cap must be >= 0");
    if (selection == Selection::Contention) contention.validate();
}

NetworkRealization sample_network(const NetworkConfig& config, rng::Stream& stream) {
    config.validate();
    const double radius = config.effective_window_radius();
    const double expected = config.intensity * M_PI * radius * radius;
    if (expected < 100.0) {
        std::ostringstream os;
        os << "sample_network: window radius " << radius << " gives expected node count "
           << expected << " < 100; enlarge the window";
        throw std::invalid_argument(os.str());
    }

    std::poisson_distribution<long> count_dist(expected);
    const long count = count_dist(stream);

    NetworkRealization real;
    real.points.reserve(static_cast<std::size_t>(count) + 1);
    for (long i = 0; i < count; ++i) {
        const double r = radius * std::sqrt(stream.next_u01());
        const double phi = 2.0 * M_PI * stream.next_u01();
        real.points.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
    real.points.push_back({0.0, 0.0});  // Slivnyak: condition on a source at the origin
    real.source_index = real.points.size() - 1;
    return real;
}

double SlotState::fading(std::uint64_t tx_id, std::uint64_t rx_id) const {
    if (fading_override) {
        auto it = fading_override->find({tx_id, rx_id});
        if (it != fading_override->end()) return it->second;
    }
    // One draw per ordered (rx, tx) pair per slot.
    return rng::exp_unit(key ^ rng::kTagFading, (rx_id << 24) ^ tx_id);
}

SlotState draw_slot(const NetworkRealization& real, const NetworkConfig& config,
                    std::size_t forced_tx, std::uint64_t slot_key) {
    SlotState slot;
    slot.key = slot_key;
    slot.forced_tx = forced_tx;
    slot.transmit.resize(real.size());
    for (std::size_t i = 0; i < real.size(); ++i) {
        const double u = rng::u01(slot_key ^ rng::kTagRole, real.rng_id(i));
        slot.transmit[i] = (i == forced_tx || u < config.map_p) ? 1 : 0;
    }
    return slot;
}

double tail_interference(const NetworkConfig& config) {
    if (!config.tail_compensation) return 0.0;
    const double radius = config.effective_window_radius();
    return config.intensity * config.map_p * 2.0 * M_PI *
           std::pow(radius, 2.0 - config.alpha) / (config.alpha - 2.0);
}

double compute_sir(Vec2 rx, std::uint64_t rx_id, std::size_t tx,
                   const SlotState& slot, const NetworkRealization& real,
                   const NetworkConfig& config) {
    if (!slot.node_transmits(tx))
        throw std::invalid_argument("compute_sir: tx node is not in Transmit role");

    const double d2_desired = std::max(dist2(rx, real.points[tx]), kDistanceFloor2);
    const double signal =
        slot.fading(real.rng_id(tx), rx_id) * pathloss_from_d2(d2_desired, config.alpha);

    double interference = tail_interference(config);
    for (std::size_t k = 0; k < real.size(); ++k) {
        if (k == tx || !slot.node_transmits(k)) continue;
        const double d2 = std::max(dist2(rx, real.points[k]), kDistanceFloor2);
        interference += slot.fading(real.rng_id(k), rx_id) * pathloss_from_d2(d2, config.alpha);
    }
    if (interference <= 0.0) return kSirInfinite;
    return signal / interference;
}

double compute_sir(std::size_t rx, std::size_t tx, const SlotState& slot,
                   const NetworkRealization& real, const NetworkConfig& config) {
    return compute_sir(real.points[rx], real.rng_id(rx), tx, slot, real, config);
}

double mutual_information(double sir) {
    return std::log2(1.0 + sir);
}

bool accumulate_metric(std::span<const double> contributions, Scheme scheme,
                       double rate, int diversity) {
    if (std::ssize(contributions) > diversity)
        throw std::invalid_argument("accumulate_metric: more contributions than diversity order");
    double sum = 0.0;
    for (double c : contributions) sum += c;
    if (scheme == Scheme::IRC) return sum >= rate;
    return std::log2(1.0 + sum) >= rate;  // RC and NC: SIRs add inside the log
}

}  // namespace m2m
