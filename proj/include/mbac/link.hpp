#ifndef MBAC_LINK_HPP
#define MBAC_LINK_HPP

#include <vector>

#include "mbac/traffic.hpp"

namespace mbac {

/// Bottleneck output interface: link capacity plus token-bucket shaper
/// parameters, mirroring a Linux tc tbf qdisc.
struct LinkConfig {
    double capacity = 1e7;      // bits/s (T)
    double tbf_rate = 1e7;      // bits/s
    double tbf_burst = 1250000; // bytes
    double tbf_limit = 1250000; // bytes (queue limit)
    double mtu = 1540;          // bytes; recorded only, unused by the fluid model

    void validate() const;
};

struct ShaperState {
    double tokens = 0.0;  // bytes, in [0, tbf_burst]
    double backlog = 0.0; // bytes, in [0, tbf_limit]
};

struct ShapeResult {
    double output_bits = 0.0;
    double dropped_bits = 0.0;
};

ShaperState full_bucket(const LinkConfig& config);

/// Advance the shaper by one tick with `demand_bits` of fluid input.
/// Tokens replenish at tbf_rate, queue overflow beyond tbf_limit is dropped,
/// and demand = output + dropped + backlog delta (in bits) exactly.
ShapeResult shape_tick(ShaperState& state, double demand_bits, double dt,
                       const LinkConfig& config);

/// A flow currently admitted to the link.
struct ActiveFlow {
    FlowSpec spec;
    EmissionProcess emission;
};

/// Total fluid demand (bits) offered by the active set over [t, t+dt).
/// Flows active for only part of the tick contribute pro rata.
double aggregate_demand(std::vector<ActiveFlow>& flows, double t, double dt);

} // namespace mbac

#endif
