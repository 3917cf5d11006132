#ifndef MBAC_TELEMETRY_HPP
#define MBAC_TELEMETRY_HPP

#include <cstddef>
#include <deque>

#include "mbac/traffic.hpp"

namespace mbac {

struct SamplerConfig {
    double sample_period = 1.0;      // seconds
    std::size_t window_samples = 10; // sliding window length

    void validate() const;
};

struct MeasurementSample {
    double timestamp = 0.0; // seconds
    double usage = 0.0;     // bits/s, averaged over the sample period
};

/// Population mean/variance over the current window contents (m and rho of
/// the Gaussian estimator).
struct WindowStats {
    double mean = 0.0;
    double variance = 0.0;
    double stddev = 0.0;
    std::size_t count = 0;
};

/// Fixed-capacity sliding window of usage samples; the oldest sample is
/// evicted once window_samples are held.
class SlidingWindow {
public:
    explicit SlidingWindow(std::size_t window_samples);

    WindowStats push(double usage);
    WindowStats stats() const { return stats_; }
    const std::deque<double>& samples() const { return buffer_; }

private:
    void recompute();

    std::size_t capacity_;
    std::deque<double> buffer_;
    WindowStats stats_;
};

/// EWMA link-usage estimate M_t = beta*m + (1-beta)*M_{t-1}, seeded with the
/// first measurement.
struct EwmaState {
    double m_t = 0.0;
    double beta = 0.2;
    bool initialized = false;
};

void ewma_update(EwmaState& state, double measurement);

} // namespace mbac

#endif
