#include "mbac/link.hpp"

#include <algorithm>
#include <cassert>

namespace mbac {

void LinkConfig::validate() const {
    if (capacity <= 0.0)
        throw ConfigError("link.capacity must be > 0");
    if (tbf_rate <= 0.0)
        throw ConfigError("link.tbf_rate must be > 0");
    if (tbf_burst <= 0.0)
        throw ConfigError("link.tbf_burst must be > 0");
    if (tbf_limit < 0.0)
        throw ConfigError("link.tbf_limit must be >= 0");
}

ShaperState full_bucket(const LinkConfig& config) {
    return ShaperState{config.tbf_burst, 0.0};
}

ShapeResult shape_tick(ShaperState& state, double demand_bits, double dt,
                       const LinkConfig& config) {
    assert(dt > 0.0 && demand_bits >= 0.0);

    state.tokens = std::min(state.tokens + config.tbf_rate * dt / 8.0, config.tbf_burst);

    double in_bytes = demand_bits / 8.0;
    double queued = state.backlog + in_bytes;
    double dropped_bytes = std::max(queued - config.tbf_limit, 0.0);
    queued -= dropped_bytes;

    // Output is limited by tokens and by the wire rate itself.
    double wire_bytes = config.capacity * dt / 8.0;
    double out_bytes = std::min({queued, state.tokens, wire_bytes});
    state.backlog = queued - out_bytes;
    state.tokens -= out_bytes;

    return ShapeResult{out_bytes * 8.0, dropped_bytes * 8.0};
}

double aggregate_demand(std::vector<ActiveFlow>& flows, double t, double dt) {
    assert(dt > 0.0);
    double bits = 0.0;
    for (auto& flow : flows) {
        double begin = std::max(t, flow.spec.arrival_time);
        double end = std::min(t + dt, flow.spec.departure_time());
        if (end <= begin)
            continue;
        bits += flow.emission.rate_at(begin) * (end - begin);
    }
    return bits;
}

} // namespace mbac
