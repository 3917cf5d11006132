#include "mbac/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

namespace mbac {

void ExperimentConfig::validate() const {
    traffic.validate();
    link.validate();
    sampler.validate();
    geb.validate();
    if (ewma_beta <= 0.0 || ewma_beta >= 1.0)
        throw ConfigError("ewma.beta must lie in (0, 1)");
    if (theta <= 0.0 || theta > 1.0)
        throw ConfigError("admission.theta must lie in (0, 1]");
    if (schemes.empty())
        throw ConfigError("experiment.schemes must name at least one scheme");
    if (tick_dt <= 0.0)
        throw ConfigError("experiment.tick_dt must be > 0");
    if (warmup_discard < 0.0 || horizon <= warmup_discard)
        throw ConfigError("experiment.horizon must exceed experiment.warmup_discard >= 0");
    if (runs < 1)
        throw ConfigError("experiment.runs must be >= 1");
    if (moving_avg_window < 1)
        throw ConfigError("experiment.moving_avg_window must be >= 1");
    double ratio = sampler.sample_period / tick_dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9)
        throw ConfigError("experiment.tick_dt must divide sampler.sample_period");
    if (!policy_rules.empty())
        SchemePolicy(policy_rules); // throws if no default rule
}

namespace {

constexpr std::size_t scheme_index(Scheme s) {
    return static_cast<std::size_t>(s);
}

} // namespace

Simulation::Simulation(const ExperimentConfig& config, SchemePolicy policy,
                       std::uint64_t seed)
    : config_(config),
      policy_(std::move(policy)),
      seed_(seed),
      window_(config.sampler.window_samples) {
    config_.validate();
    config_.traffic.rng_seed = seed;
    arrivals_ = generate_arrivals(config_.traffic, config_.horizon);
    shaper_ = full_bucket(config_.link);
    ewma_.beta = config_.ewma_beta;
    ticks_per_sample_ =
        static_cast<std::uint64_t>(std::llround(config_.sampler.sample_period / config_.tick_dt));
}

AdmissionDecision Simulation::decide(Scheme scheme, const AdmissionRequest& req) const {
    switch (scheme) {
    case Scheme::PBAC_ES:
        return decide_pbac_es(ledger_.admitted_peak_sum(), req, config_.theta,
                              config_.link.capacity);
    case Scheme::SWMSA:
        return decide_swmsa(stats_, req, config_.theta, config_.link.capacity);
    case Scheme::GEB:
        return decide_geb(stats_, config_.geb, req, config_.link.capacity);
    case Scheme::EWMA_PBAC:
        return decide_ewma_pbac(ewma_, ledger_.admitted_peak_sum(), req,
                                config_.link.capacity);
    }
    throw std::logic_error("unknown scheme");
}

void Simulation::step() {
    const double dt = config_.tick_dt;
    const double t = static_cast<double>(tick_) * dt;

    // Lifetime expiries release their peak reservation before new decisions.
    for (auto it = active_.begin(); it != active_.end();) {
        if (it->spec.departure_time() <= t) {
            ledger_.on_depart(it->spec);
            it = active_.erase(it);
        } else {
            ++it;
        }
    }

    while (next_arrival_ < arrivals_.size() &&
           arrivals_[next_arrival_].arrival_time <= t) {
        const FlowSpec& flow = arrivals_[next_arrival_++];
        auto req = AdmissionRequest::from_flow(flow);

        AdmissionDecision verdict;
        if (config_.coupled_mode) {
            CoupledDecision logged;
            logged.time = flow.arrival_time;
            for (Scheme s : kAllSchemes)
                logged.by_scheme[scheme_index(s)] = decide(s, req);
            verdict = logged.by_scheme[scheme_index(config_.coupled_authority)];
            coupled_.push_back(logged);
        } else {
            verdict = decide(policy_.select(flow.source_tag), req);
        }

        log_.push_back(DecisionRecord{flow.arrival_time, flow.flow_id, verdict});
        if (flow.arrival_time >= config_.warmup_discard) {
            ++requests_;
            verdict.admit ? ++admitted_count_ : ++rejected_;
        }
        if (verdict.admit) {
            ledger_.on_admit(flow);
            active_.push_back(ActiveFlow{flow, EmissionProcess(flow, config_.traffic)});
        }
    }

    double demand = aggregate_demand(active_, t, dt);
    ShapeResult shaped = shape_tick(shaper_, demand, dt, config_.link);
    sample_bits_ += shaped.output_bits;
    if (t >= config_.warmup_discard)
        metered_output_bits_ += shaped.output_bits;

    ++tick_;
    if (tick_ % ticks_per_sample_ == 0) {
        ++sample_index_;
        MeasurementSample sample;
        sample.timestamp = static_cast<double>(sample_index_) * config_.sampler.sample_period;
        sample.usage = sample_bits_ / config_.sampler.sample_period;
        sample_bits_ = 0.0;
        stats_ = window_.push(sample.usage);
        ewma_update(ewma_, sample.usage);
        samples_.push_back(sample);
    }
}

void Simulation::run_until(double t) {
    const auto total = static_cast<std::uint64_t>(std::llround(config_.horizon / config_.tick_dt));
    while (tick_ < total && static_cast<double>(tick_) * config_.tick_dt < t)
        step();
}

RunReport Simulation::finish() {
    run_until(config_.horizon + config_.tick_dt);

    RunReport report;
    report.scheme = policy_.select("");
    report.seed = seed_;
    report.requests = requests_;
    report.admitted = admitted_count_;
    report.rejected = rejected_;
    report.blocking_probability =
        requests_ == 0 ? 0.0
                       : static_cast<double>(rejected_) / static_cast<double>(requests_);
    report.avg_utilization =
        metered_output_bits_ /
        ((config_.horizon - config_.warmup_discard) * config_.link.capacity);

    std::vector<double> usage(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i)
        usage[i] = samples_[i].usage;
    auto averaged = moving_average(usage, config_.moving_avg_window);
    report.usage_series.resize(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i)
        report.usage_series[i] = UsageRow{samples_[i].timestamp, usage[i], averaged[i]};
    return report;
}

namespace {

SchemePolicy policy_for(const ExperimentConfig& config, Scheme scheme) {
    if (config.policy_rules.empty())
        return SchemePolicy::single(scheme);
    // Tag-specific rules apply as written; the default rule is rebased to the
    // scheme under test so per-scheme comparison stays meaningful.
    auto rules = config.policy_rules;
    for (auto& rule : rules)
        if (rule.match_tag.empty())
            rule.scheme = scheme;
    return SchemePolicy(std::move(rules));
}

} // namespace

RunReport run_once(const ExperimentConfig& config, Scheme scheme, std::uint64_t seed) {
    Simulation sim(config, policy_for(config, scheme), seed);
    auto report = sim.finish();
    report.scheme = scheme;
    return report;
}

double student_t_975(unsigned df) {
    if (df < 1)
        throw std::domain_error("degrees of freedom must be >= 1");
    boost::math::students_t dist(static_cast<double>(df));
    return boost::math::quantile(dist, 0.975);
}

std::optional<double> ci95_half_width(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2)
        return std::nullopt;
    double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double sq = 0.0;
    for (double v : values)
        sq += (v - mean) * (v - mean);
    double stddev = std::sqrt(sq / static_cast<double>(n - 1));
    return student_t_975(static_cast<unsigned>(n - 1)) * stddev /
           std::sqrt(static_cast<double>(n));
}

AggregateReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    AggregateReport report;
    for (Scheme scheme : config.schemes) {
        std::vector<double> blocking, utilization;
        for (unsigned i = 0; i < config.runs; ++i) {
            auto run = run_once(config, scheme, config.base_seed + i);
            blocking.push_back(run.blocking_probability);
            utilization.push_back(run.avg_utilization);
            report.runs.push_back(std::move(run));
        }
        SchemeAggregate agg;
        agg.scheme = scheme;
        agg.runs = config.runs;
        agg.mean_blocking = std::accumulate(blocking.begin(), blocking.end(), 0.0) /
                            static_cast<double>(blocking.size());
        agg.mean_utilization =
            std::accumulate(utilization.begin(), utilization.end(), 0.0) /
            static_cast<double>(utilization.size());
        agg.ci95_blocking = ci95_half_width(blocking);
        agg.ci95_utilization = ci95_half_width(utilization);
        report.per_scheme.push_back(agg);
    }
    return report;
}

std::vector<GainRow> compute_gains(const std::vector<SchemeAggregate>& aggregates,
                                   Scheme target) {
    const SchemeAggregate* tgt = nullptr;
    for (const auto& agg : aggregates)
        if (agg.scheme == target)
            tgt = &agg;
    if (tgt == nullptr)
        throw ConfigError("gain target scheme not present in the aggregates");

    std::vector<GainRow> rows;
    for (const auto& other : aggregates) {
        if (other.scheme == target)
            continue;
        GainRow row;
        row.target = target;
        row.baseline = other.scheme;
        if (other.mean_blocking > 0.0)
            row.blocking_decrease_pct =
                (other.mean_blocking - tgt->mean_blocking) / other.mean_blocking * 100.0;
        if (other.mean_utilization > 0.0)
            row.utilization_increase_pct =
                (tgt->mean_utilization - other.mean_utilization) / other.mean_utilization *
                100.0;
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> moving_average(std::span<const double> series, std::size_t window) {
    if (window < 1)
        throw ConfigError("moving-average window must be >= 1");
    std::vector<double> out(series.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        sum += series[i];
        if (i >= window)
            sum -= series[i - window];
        out[i] = sum / static_cast<double>(std::min(i + 1, window));
    }
    return out;
}

} // namespace mbac
