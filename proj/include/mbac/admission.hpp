#ifndef MBAC_ADMISSION_HPP
#define MBAC_ADMISSION_HPP

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mbac/link.hpp"
#include "mbac/telemetry.hpp"
#include "mbac/traffic.hpp"

namespace mbac {

enum class Scheme { PBAC_ES, SWMSA, GEB, EWMA_PBAC };

constexpr Scheme kAllSchemes[] = {Scheme::PBAC_ES, Scheme::SWMSA, Scheme::GEB,
                                  Scheme::EWMA_PBAC};

std::string scheme_name(Scheme scheme);
Scheme scheme_from_name(std::string_view name);

/// Gaussian tail weight for the equivalent-bandwidth estimator:
/// alpha = sqrt(2*ln(1/epsilon) - ln(2*pi)). Defined for
/// 0 < epsilon <= 1/sqrt(2*pi); throws std::domain_error otherwise.
double alpha(double epsilon);

/// Largest admissible epsilon, 1/sqrt(2*pi), where alpha reaches 0.
double max_epsilon();

struct GebConfig {
    enum class Dispersion { STDDEV, VARIANCE };

    double epsilon = 0.3;
    Dispersion dispersion_mode = Dispersion::STDDEV;

    void validate() const;
};

struct AdmissionRequest {
    FlowSpec flow;
    double requested_peak = 0.0;
    double requested_avg = 0.0;

    static AdmissionRequest from_flow(const FlowSpec& flow) {
        return AdmissionRequest{flow, flow.peak_rate, flow.avg_rate};
    }
};

/// A verdict plus the values that produced it, so the criterion
/// admit <=> request + estimate < criterion_rhs can be re-checked.
struct AdmissionDecision {
    bool admit = false;
    Scheme scheme = Scheme::PBAC_ES;
    double estimate = 0.0;      // the C / C2 / C_eq / C3 used
    double criterion_rhs = 0.0; // theta*T (or T)
    double request = 0.0;       // requesting flow's peak rate
};

/// Tracks the peak-rate sum C2 of the currently admitted, not-yet-departed
/// flows. Departure of an unknown flow is a bookkeeping error.
class PeakLedger {
public:
    void on_admit(const FlowSpec& flow);
    void on_depart(const FlowSpec& flow);

    double admitted_peak_sum() const { return peak_sum_; }
    std::size_t active_count() const { return active_.size(); }

private:
    std::unordered_map<std::uint64_t, double> active_;
    double peak_sum_ = 0.0;
};

AdmissionDecision decide_pbac_es(double admitted_peak_sum, const AdmissionRequest& req,
                                 double theta, double capacity);
AdmissionDecision decide_swmsa(const WindowStats& stats, const AdmissionRequest& req,
                               double theta, double capacity);
AdmissionDecision decide_geb(const WindowStats& stats, const GebConfig& geb,
                             const AdmissionRequest& req, double capacity);
AdmissionDecision decide_ewma_pbac(const EwmaState& ewma, double admitted_peak_sum,
                                   const AdmissionRequest& req, double capacity);

/// One scheme-selection rule; an empty match_tag matches every request.
struct PolicyRule {
    std::string match_tag;
    Scheme scheme = Scheme::EWMA_PBAC;
};

/// Ordered first-match rule list with a mandatory catch-all default,
/// swappable at run time without touching admitted flows.
class SchemePolicy {
public:
    SchemePolicy() = default;
    explicit SchemePolicy(std::vector<PolicyRule> rules);

    static SchemePolicy single(Scheme scheme) {
        return SchemePolicy({PolicyRule{"", scheme}});
    }

    Scheme select(std::string_view source_tag) const;
    const std::vector<PolicyRule>& rules() const { return rules_; }

private:
    std::vector<PolicyRule> rules_;
};

} // namespace mbac

#endif
