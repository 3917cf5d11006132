#include "mbac/traffic.hpp"

#include <algorithm>

namespace mbac {

void TrafficConfig::validate() const {
    if (mean_interarrival <= 0.0)
        throw ConfigError("traffic.mean_interarrival must be > 0");
    if (lifetime_min_mean <= 0.0)
        throw ConfigError("traffic.lifetime_min_mean must be > 0");
    if (lifetime_min_mean > lifetime_max_mean)
        throw ConfigError("traffic.lifetime_min_mean must not exceed traffic.lifetime_max_mean");
    if (mean_lifetime < lifetime_min_mean || mean_lifetime > lifetime_max_mean)
        throw ConfigError("traffic.mean_lifetime must lie in [lifetime_min_mean, lifetime_max_mean]");
    if (avg_rate <= 0.0 || avg_rate > peak_rate)
        throw ConfigError("traffic rates must satisfy 0 < avg_rate <= peak_rate");
    if (emission_model == EmissionModel::ON_OFF && on_mean <= 0.0)
        throw ConfigError("traffic.on_mean must be > 0 for the on_off model");
}

namespace {

// Distinct per-flow RNG stream derived from the base seed (splitmix64 step).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t flow_id) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (flow_id + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

const char* kSourceTags[] = {"edgeA", "edgeB", "edgeC", "edgeD"};

} // namespace

std::vector<FlowSpec> generate_arrivals(const TrafficConfig& config, double horizon) {
    config.validate();
    if (horizon <= 0.0)
        throw ConfigError("horizon must be > 0");

    std::mt19937_64 rng(config.rng_seed);
    std::exponential_distribution<double> interarrival(1.0 / config.mean_interarrival);
    std::uniform_real_distribution<double> lifetime_mean(config.lifetime_min_mean,
                                                         config.lifetime_max_mean);

    std::vector<FlowSpec> flows;
    double t = 0.0;
    std::uint64_t next_id = 0;
    for (;;) {
        t += interarrival(rng);
        if (t >= horizon)
            break;
        FlowSpec flow;
        flow.flow_id = next_id++;
        flow.arrival_time = t;
        std::exponential_distribution<double> lifetime(1.0 / lifetime_mean(rng));
        flow.lifetime = std::max(lifetime(rng), 1e-9);
        flow.avg_rate = config.avg_rate;
        flow.peak_rate = config.peak_rate;
        flow.source_tag = kSourceTags[flow.flow_id % 4];
        flows.push_back(std::move(flow));
    }
    return flows;
}

EmissionProcess::EmissionProcess(const FlowSpec& flow, const TrafficConfig& config)
    : start_(flow.arrival_time),
      end_(flow.arrival_time + flow.lifetime),
      avg_rate_(flow.avg_rate),
      peak_rate_(flow.peak_rate),
      model_(config.emission_model),
      rng_(mix_seed(config.rng_seed, flow.flow_id)) {
    if (model_ == EmissionModel::ON_OFF) {
        on_mean_ = config.on_mean;
        // Mean OFF sojourn chosen so the ON fraction equals avg/peak.
        off_mean_ = on_mean_ * (peak_rate_ - avg_rate_) / avg_rate_;
        on_ = true;
        std::exponential_distribution<double> on(1.0 / on_mean_);
        segment_end_ = start_ + on(rng_);
    }
}

void EmissionProcess::advance_to(double t) {
    while (segment_end_ <= t) {
        on_ = !on_;
        double mean = on_ ? on_mean_ : off_mean_;
        if (mean <= 0.0) {
            // Degenerate duty cycle (avg == peak): zero-length OFF sojourns.
            on_ = !on_;
            std::exponential_distribution<double> d(1.0 / on_mean_);
            segment_end_ += d(rng_);
            continue;
        }
        std::exponential_distribution<double> d(1.0 / mean);
        segment_end_ += d(rng_);
    }
}

double EmissionProcess::rate_at(double t) {
    if (t < start_ || t >= end_)
        throw std::out_of_range("emission queried outside the flow's active interval");
    if (model_ == EmissionModel::CONSTANT)
        return avg_rate_;
    advance_to(t);
    return on_ ? peak_rate_ : 0.0;
}

} // namespace mbac
