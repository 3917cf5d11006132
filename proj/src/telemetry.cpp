#include "mbac/telemetry.hpp"

#include <cmath>

namespace mbac {

void SamplerConfig::validate() const {
    if (sample_period <= 0.0)
        throw ConfigError("sampler.sample_period must be > 0");
    if (window_samples < 1)
        throw ConfigError("sampler.window_samples must be >= 1");
}

SlidingWindow::SlidingWindow(std::size_t window_samples) : capacity_(window_samples) {
    if (capacity_ < 1)
        throw ConfigError("window_samples must be >= 1");
}

WindowStats SlidingWindow::push(double usage) {
    buffer_.push_back(usage);
    if (buffer_.size() > capacity_)
        buffer_.pop_front();
    recompute();
    return stats_;
}

void SlidingWindow::recompute() {
    // The window is at most a handful of samples; exact two-pass recompute.
    double sum = 0.0;
    for (double x : buffer_)
        sum += x;
    double n = static_cast<double>(buffer_.size());
    double mean = sum / n;
    double sq = 0.0;
    for (double x : buffer_)
        sq += (x - mean) * (x - mean);
    stats_.mean = mean;
    stats_.variance = sq / n;
    stats_.stddev = std::sqrt(stats_.variance);
    stats_.count = buffer_.size();
}

void ewma_update(EwmaState& state, double measurement) {
    if (!state.initialized) {
        state.m_t = measurement;
        state.initialized = true;
        return;
    }
    state.m_t = state.beta * measurement + (1.0 - state.beta) * state.m_t;
}

} // namespace mbac
