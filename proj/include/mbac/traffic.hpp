#ifndef MBAC_TRAFFIC_HPP
#define MBAC_TRAFFIC_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbac {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class EmissionModel { CONSTANT, ON_OFF };

/// One fluid-rate traffic flow. Rates in bits/s, times in seconds.
struct FlowSpec {
    std::uint64_t flow_id = 0;
    double arrival_time = 0.0;
    double lifetime = 0.0;
    double avg_rate = 0.0;
    double peak_rate = 0.0;
    std::string source_tag;

    double departure_time() const { return arrival_time + lifetime; }
};

struct TrafficConfig {
    double mean_interarrival = 6.0;   // seconds
    double mean_lifetime = 75.0;      // seconds
    double lifetime_min_mean = 30.0;  // seconds
    double lifetime_max_mean = 120.0; // seconds
    double avg_rate = 1e6;            // bits/s
    double peak_rate = 1.2e6;         // bits/s
    EmissionModel emission_model = EmissionModel::ON_OFF;
    double on_mean = 2.0;             // mean ON sojourn, seconds (ON_OFF only)
    std::uint64_t rng_seed = 1;

    void validate() const;
};

/// Poisson arrival process with exponential lifetimes. Each flow's lifetime
/// mean is drawn uniformly from [lifetime_min_mean, lifetime_max_mean].
/// Identical (config, seed) yields an identical sequence.
std::vector<FlowSpec> generate_arrivals(const TrafficConfig& config, double horizon);

/// Per-flow fluid emission process. CONSTANT emits avg_rate for the whole
/// lifetime; ON_OFF alternates exponential ON sojourns at peak_rate with
/// exponential OFF sojourns sized so the long-run mean equals avg_rate.
/// rate_at must be queried with non-decreasing t.
class EmissionProcess {
public:
    EmissionProcess(const FlowSpec& flow, const TrafficConfig& config);

    /// Instantaneous rate (bits/s) at time t; throws std::out_of_range if t
    /// is outside [arrival, arrival + lifetime).
    double rate_at(double t);

private:
    void advance_to(double t);

    double start_;
    double end_;
    double avg_rate_;
    double peak_rate_;
    EmissionModel model_;
    double on_mean_ = 0.0;
    double off_mean_ = 0.0;
    double segment_end_ = 0.0;
    bool on_ = true;
    std::mt19937_64 rng_;
};

} // namespace mbac

#endif
