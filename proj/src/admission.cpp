#include "mbac/admission.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mbac {

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
    case Scheme::PBAC_ES:
        return "PBAC-ES";
    case Scheme::SWMSA:
        return "SWMSA";
    case Scheme::GEB:
        return "GEB";
    case Scheme::EWMA_PBAC:
        return "EWMA-PBAC";
    }
    throw std::logic_error("unknown scheme");
}

Scheme scheme_from_name(std::string_view name) {
    for (Scheme s : kAllSchemes)
        if (name == scheme_name(s))
            return s;
    throw ConfigError("unknown scheme name: '" + std::string(name) +
                      "' (expected PBAC-ES, SWMSA, GEB or EWMA-PBAC)");
}

double max_epsilon() {
    return 1.0 / std::sqrt(2.0 * std::numbers::pi);
}

double alpha(double epsilon) {
    if (epsilon <= 0.0 || epsilon > max_epsilon())
        throw std::domain_error("epsilon must lie in (0, 1/sqrt(2*pi)]");
    double radicand = 2.0 * std::log(1.0 / epsilon) - std::log(2.0 * std::numbers::pi);
    return std::sqrt(std::max(radicand, 0.0));
}

void GebConfig::validate() const {
    if (epsilon <= 0.0 || epsilon > max_epsilon())
        throw ConfigError("geb.epsilon must lie in (0, 1/sqrt(2*pi)] ~ (0, 0.3989]");
}

void PeakLedger::on_admit(const FlowSpec& flow) {
    auto [it, inserted] = active_.emplace(flow.flow_id, flow.peak_rate);
    if (!inserted)
        throw std::logic_error("flow admitted twice: id " + std::to_string(flow.flow_id));
    peak_sum_ += flow.peak_rate;
}

void PeakLedger::on_depart(const FlowSpec& flow) {
    auto it = active_.find(flow.flow_id);
    if (it == active_.end())
        throw std::logic_error("departure of unknown flow: id " +
                               std::to_string(flow.flow_id));
    peak_sum_ -= it->second;
    active_.erase(it);
    if (active_.empty())
        peak_sum_ = 0.0; // clear accumulated rounding
}

namespace {

AdmissionDecision make_decision(Scheme scheme, double estimate, double rhs,
                                const AdmissionRequest& req) {
    AdmissionDecision d;
    d.scheme = scheme;
    d.estimate = estimate;
    d.criterion_rhs = rhs;
    d.request = req.requested_peak;
    d.admit = req.requested_peak + estimate < rhs; // ties reject
    return d;
}

} // namespace

AdmissionDecision decide_pbac_es(double admitted_peak_sum, const AdmissionRequest& req,
                                 double theta, double capacity) {
    return make_decision(Scheme::PBAC_ES, admitted_peak_sum, theta * capacity, req);
}

AdmissionDecision decide_swmsa(const WindowStats& stats, const AdmissionRequest& req,
                               double theta, double capacity) {
    return make_decision(Scheme::SWMSA, stats.mean, theta * capacity, req);
}

AdmissionDecision decide_geb(const WindowStats& stats, const GebConfig& geb,
                             const AdmissionRequest& req, double capacity) {
    double dispersion = geb.dispersion_mode == GebConfig::Dispersion::STDDEV
                            ? stats.stddev
                            : stats.variance;
    double estimate = stats.mean + alpha(geb.epsilon) * dispersion;
    return make_decision(Scheme::GEB, estimate, capacity, req);
}

AdmissionDecision decide_ewma_pbac(const EwmaState& ewma, double admitted_peak_sum,
                                   const AdmissionRequest& req, double capacity) {
    double measured = ewma.initialized ? ewma.m_t : 0.0;
    double estimate = std::min(measured, admitted_peak_sum);
    return make_decision(Scheme::EWMA_PBAC, estimate, capacity, req);
}

SchemePolicy::SchemePolicy(std::vector<PolicyRule> rules) : rules_(std::move(rules)) {
    bool has_default = false;
    for (const auto& rule : rules_)
        has_default = has_default || rule.match_tag.empty();
    if (!has_default)
        throw ConfigError("scheme policy needs a default (empty-tag) rule");
}

Scheme SchemePolicy::select(std::string_view source_tag) const {
    if (rules_.empty())
        throw ConfigError("scheme policy is empty");
    for (const auto& rule : rules_)
        if (rule.match_tag.empty() || rule.match_tag == source_tag)
            return rule.scheme;
    throw ConfigError("scheme policy has no default rule");
}

} // namespace mbac
