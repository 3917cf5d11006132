#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mbac/traffic.hpp"

using namespace mbac;

namespace {

TrafficConfig default_config(std::uint64_t seed) {
    TrafficConfig config;
    config.rng_seed = seed;
    return config;
}

} // namespace

TEST_CASE("identical seed yields identical arrival sequences") {
    auto a = generate_arrivals(default_config(42), 600.0);
    auto b = generate_arrivals(default_config(42), 600.0);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].flow_id == b[i].flow_id);
        CHECK(a[i].arrival_time == b[i].arrival_time);
        CHECK(a[i].lifetime == b[i].lifetime);
        CHECK(a[i].source_tag == b[i].source_tag);
    }
}

TEST_CASE("near-zero horizon yields at most one flow, none beyond horizon") {
    double horizon = 6.0 * 1e-9;
    auto flows = generate_arrivals(default_config(7), horizon);
    CHECK(flows.size() <= 1);
    for (const auto& flow : flows)
        CHECK(flow.arrival_time < horizon);
}

TEST_CASE("generated sequences satisfy the FlowSpec invariants") {
    auto flows = generate_arrivals(default_config(3), 2000.0);
    double prev_arrival = 0.0;
    std::uint64_t prev_id = 0;
    for (std::size_t i = 0; i < flows.size(); ++i) {
        const auto& flow = flows[i];
        CHECK(flow.arrival_time >= prev_arrival);
        CHECK(flow.lifetime > 0.0);
        CHECK(flow.avg_rate > 0.0);
        CHECK(flow.avg_rate <= flow.peak_rate);
        if (i > 0)
            CHECK(flow.flow_id > prev_id);
        prev_arrival = flow.arrival_time;
        prev_id = flow.flow_id;
    }
}

TEST_CASE("seed-averaged flow count matches the Poisson oracle") {
    // mean count = horizon / mean_interarrival = 100; SE over 1000 runs
    // = sqrt(100/1000).
    const int runs = 1000;
    double total = 0.0;
    for (int i = 0; i < runs; ++i)
        total += static_cast<double>(generate_arrivals(default_config(1000 + i), 600.0).size());
    double mean = total / runs;
    double se = std::sqrt(100.0 / runs);
    CHECK(std::abs(mean - 100.0) < 3.0 * se);
}

TEST_CASE("empirical interarrival mean matches the configured mean") {
    auto config = default_config(11);
    auto flows = generate_arrivals(config, 6.0 * 20000);
    REQUIRE(flows.size() >= 10000);
    double sum = flows[0].arrival_time;
    for (std::size_t i = 1; i < flows.size(); ++i)
        sum += flows[i].arrival_time - flows[i - 1].arrival_time;
    double mean = sum / static_cast<double>(flows.size());
    double se = config.mean_interarrival / std::sqrt(static_cast<double>(flows.size()));
    CHECK(std::abs(mean - config.mean_interarrival) < 3.0 * se);
}

TEST_CASE("invalid configs are rejected") {
    auto config = default_config(1);
    config.mean_interarrival = 0.0;
    CHECK_THROWS_AS(generate_arrivals(config, 600.0), ConfigError);

    config = default_config(1);
    config.avg_rate = 2e6; // above peak
    CHECK_THROWS_AS(generate_arrivals(config, 600.0), ConfigError);

    config = default_config(1);
    CHECK_THROWS_AS(generate_arrivals(config, 0.0), ConfigError);
}

TEST_CASE("constant emission returns avg_rate at every in-interval instant") {
    auto config = default_config(5);
    config.emission_model = EmissionModel::CONSTANT;
    FlowSpec flow{0, 10.0, 50.0, 1e6, 1.2e6, "edgeA"};
    EmissionProcess emission(flow, config);
    for (double t = 10.0; t < 60.0; t += 0.7)
        CHECK(emission.rate_at(t) == 1e6);
}

TEST_CASE("emission outside the active interval throws") {
    auto config = default_config(5);
    config.emission_model = EmissionModel::CONSTANT;
    FlowSpec flow{0, 10.0, 50.0, 1e6, 1.2e6, "edgeA"};
    EmissionProcess emission(flow, config);
    CHECK_THROWS_AS(emission.rate_at(9.9), std::out_of_range);
    CHECK_THROWS_AS(emission.rate_at(60.0), std::out_of_range);
}

TEST_CASE("on/off with avg == peak stays on permanently") {
    auto config = default_config(5);
    config.emission_model = EmissionModel::ON_OFF;
    config.avg_rate = config.peak_rate = 1.2e6;
    FlowSpec flow{0, 0.0, 100.0, 1.2e6, 1.2e6, "edgeA"};
    EmissionProcess emission(flow, config);
    for (double t = 0.0; t < 100.0; t += 0.25)
        CHECK(emission.rate_at(t) == 1.2e6);
}

TEST_CASE("on/off long-run average converges to avg_rate") {
    auto config = default_config(29);
    config.emission_model = EmissionModel::ON_OFF;
    FlowSpec flow{0, 0.0, 10000.0, 1e6, 1.2e6, "edgeA"};
    EmissionProcess emission(flow, config);
    const double dt = 0.01;
    double bits = 0.0;
    for (double t = 0.0; t < 10000.0; t += dt)
        bits += emission.rate_at(t) * dt;
    double avg = bits / 10000.0;
    CHECK(avg == doctest::Approx(1e6).epsilon(0.02));
}

TEST_CASE("on/off duty cycle converges to avg/peak") {
    auto config = default_config(31);
    config.emission_model = EmissionModel::ON_OFF;
    FlowSpec flow{0, 0.0, 10000.0, 1e6, 1.2e6, "edgeA"};
    EmissionProcess emission(flow, config);
    const double dt = 0.01;
    double on_time = 0.0;
    for (double t = 0.0; t < 10000.0; t += dt)
        if (emission.rate_at(t) > 0.0)
            on_time += dt;
    CHECK(on_time / 10000.0 == doctest::Approx(1e6 / 1.2e6).epsilon(0.02));
}
