#ifndef MBAC_EXPERIMENT_HPP
#define MBAC_EXPERIMENT_HPP

#include <array>
#include <optional>
#include <span>

#include "mbac/admission.hpp"
#include "mbac/link.hpp"
#include "mbac/telemetry.hpp"
#include "mbac/traffic.hpp"

namespace mbac {

struct ExperimentConfig {
    TrafficConfig traffic;
    LinkConfig link;
    SamplerConfig sampler;
    GebConfig geb;
    double ewma_beta = 0.2;
    double theta = 1.0; // utilization target for the theta*T criteria

    std::vector<Scheme> schemes = {Scheme::PBAC_ES, Scheme::SWMSA, Scheme::GEB,
                                   Scheme::EWMA_PBAC};
    std::vector<PolicyRule> policy_rules; // optional tag overrides; empty tag = default

    double tick_dt = 0.1;         // seconds
    double horizon = 7200.0;      // seconds; long enough for tight 95% CIs over 10 runs
    double warmup_discard = 60.0; // seconds excluded from metrics
    unsigned runs = 10;
    std::uint64_t base_seed = 1;
    bool coupled_mode = false;
    Scheme coupled_authority = Scheme::EWMA_PBAC;
    std::size_t moving_avg_window = 10;

    void validate() const;
};

struct UsageRow {
    double timestamp = 0.0;      // seconds
    double usage_bps = 0.0;      // sampled shaper output
    double moving_avg_bps = 0.0; // trailing moving average
};

struct RunReport {
    Scheme scheme = Scheme::PBAC_ES;
    std::uint64_t seed = 0;
    std::uint64_t requests = 0;
    std::uint64_t admitted = 0;
    std::uint64_t rejected = 0;
    double blocking_probability = 0.0;
    double avg_utilization = 0.0;
    std::vector<UsageRow> usage_series;
};

/// All four schemes' verdicts at one decision instant, evaluated on the
/// shared state snapshot (coupled mode).
struct CoupledDecision {
    double time = 0.0;
    std::array<AdmissionDecision, 4> by_scheme; // indexed by Scheme order
};

struct SchemeAggregate {
    Scheme scheme = Scheme::PBAC_ES;
    unsigned runs = 0;
    double mean_blocking = 0.0;
    double mean_utilization = 0.0;
    std::optional<double> ci95_blocking;    // absent when runs < 2
    std::optional<double> ci95_utilization;
};

struct AggregateReport {
    std::vector<SchemeAggregate> per_scheme;
    std::vector<RunReport> runs;
};

struct GainRow {
    Scheme target = Scheme::EWMA_PBAC;
    Scheme baseline = Scheme::PBAC_ES;
    std::optional<double> blocking_decrease_pct;   // absent when baseline blocking = 0
    std::optional<double> utilization_increase_pct;
};

/// Tick-driven simulation of one run: arrivals are admitted or rejected
/// against the policy-selected scheme, admitted flows feed the shaper, and
/// the sampler drives the window/EWMA state consumed by the next decisions.
/// The policy can be swapped between steps without disturbing admitted flows.
class Simulation {
public:
    Simulation(const ExperimentConfig& config, SchemePolicy policy, std::uint64_t seed);

    /// Advance the loop through all ticks that start strictly before t.
    void run_until(double t);
    void set_policy(SchemePolicy policy) { policy_ = std::move(policy); }

    RunReport finish(); // runs to the horizon and builds the report
    const std::vector<CoupledDecision>& coupled_decisions() const { return coupled_; }

    struct DecisionRecord {
        double time = 0.0;
        std::uint64_t flow_id = 0;
        AdmissionDecision decision;
    };
    const std::vector<DecisionRecord>& decision_log() const { return log_; }

private:
    void step();
    AdmissionDecision decide(Scheme scheme, const AdmissionRequest& req) const;

    ExperimentConfig config_;
    SchemePolicy policy_;
    std::uint64_t seed_;
    std::vector<FlowSpec> arrivals_;
    std::size_t next_arrival_ = 0;
    std::vector<ActiveFlow> active_;
    PeakLedger ledger_;
    ShaperState shaper_;
    SlidingWindow window_;
    WindowStats stats_;
    EwmaState ewma_;
    std::uint64_t tick_ = 0;
    std::uint64_t ticks_per_sample_ = 1;
    double sample_bits_ = 0.0;
    std::size_t sample_index_ = 0;
    std::vector<MeasurementSample> samples_;
    std::uint64_t requests_ = 0, admitted_count_ = 0, rejected_ = 0;
    double metered_output_bits_ = 0.0;
    std::vector<CoupledDecision> coupled_;
    std::vector<DecisionRecord> log_;
};

RunReport run_once(const ExperimentConfig& config, Scheme scheme, std::uint64_t seed);

/// Executes config.runs seeded runs per scheme and aggregates blocking and
/// utilization with 95% Student's-t confidence intervals.
AggregateReport run_experiment(const ExperimentConfig& config);

/// Relative performance of `target` against every other scheme present:
/// percent decrease in blocking and percent increase in utilization.
std::vector<GainRow> compute_gains(const std::vector<SchemeAggregate>& aggregates,
                                   Scheme target);

/// Trailing moving average over min(window, samples so far) values.
std::vector<double> moving_average(std::span<const double> series, std::size_t window);

/// 97.5th percentile of Student's t with df degrees of freedom.
double student_t_975(unsigned df);

/// t_{0.975,df} * s / sqrt(n) over the given per-run values; empty when n < 2.
std::optional<double> ci95_half_width(std::span<const double> values);

} // namespace mbac

#endif
