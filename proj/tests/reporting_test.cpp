#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mbac/config.hpp"
#include "mbac/report.hpp"

using namespace mbac;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("mbac_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("an empty config file yields the documented defaults") {
    auto config = parse_config_text("");
    CHECK(config.link.capacity == 1e7);
    CHECK(config.link.tbf_burst == 1250000.0);
    CHECK(config.link.tbf_limit == 1250000.0);
    CHECK(config.link.mtu == 1540.0);
    CHECK(config.sampler.sample_period == 1.0);
    CHECK(config.sampler.window_samples == 10);
    CHECK(config.geb.epsilon == 0.3);
    CHECK(config.ewma_beta == 0.2);
    CHECK(config.theta == 1.0);
    CHECK(config.traffic.avg_rate == 1e6);
    CHECK(config.traffic.peak_rate == 1.2e6);
    CHECK(config.traffic.lifetime_min_mean == 30.0);
    CHECK(config.traffic.lifetime_max_mean == 120.0);
    CHECK(config.runs == 10);
    CHECK(config.horizon == 7200.0);
    CHECK(config.schemes.size() == 4);
}

TEST_CASE("unknown keys are rejected by name") {
    try {
        parse_config_text("traffic.mean_interarival = 6\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("traffic.mean_interarival") != std::string::npos);
    }
}

TEST_CASE("epsilon beyond the alpha domain is rejected with the bound") {
    CHECK_THROWS_AS(parse_config_text("geb.epsilon = 0.5\n"), ConfigError);
}

TEST_CASE("malformed values report the key") {
    CHECK_THROWS_AS(parse_config_text("link.capacity = ten\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("experiment.runs = -3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("experiment.coupled_mode = yes\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("no_equals_sign\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("link.capacity = 1\nlink.capacity = 2\n"), ConfigError);
}

TEST_CASE("serialized configs re-parse to the identical config") {
    auto config = parse_config_text(
        "traffic.mean_interarrival = 4.5\n"
        "traffic.emission_model = constant\n"
        "link.capacity = 2e7\n"
        "link.tbf_rate = 2e7\n"
        "geb.dispersion_mode = variance\n"
        "experiment.schemes = GEB,EWMA-PBAC\n"
        "experiment.runs = 3\n"
        "experiment.base_seed = 99\n"
        "policy.rule.1 = edgeA:EWMA-PBAC\n"
        "policy.default = GEB\n");
    auto text = serialize_config(config);
    auto reparsed = parse_config_text(text);
    CHECK(serialize_config(reparsed) == text);
    CHECK(reparsed.policy_rules.size() == 2);
    CHECK(reparsed.policy_rules[0].match_tag == "edgeA");
    CHECK(reparsed.policy_rules[1].match_tag.empty());
    CHECK(reparsed.schemes.size() == 2);
}

TEST_CASE("policy rules without a default are rejected") {
    CHECK_THROWS_AS(parse_config_text("policy.rule.1 = edgeA:GEB\n"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
    auto config = parse_config_text(
        "# full comment line\n"
        "\n"
        "link.capacity = 5e6  # trailing comment\n");
    CHECK(config.link.capacity == 5e6);
}

TEST_CASE("format_fixed renders six significant digits in fixed notation") {
    CHECK(format_fixed(0.1691) == "0.169100");
    CHECK(format_fixed(0.014) == "0.014000");
    CHECK(format_fixed(1e7) == "10000000");
    CHECK(format_fixed(5.755e6) == "5755000");
    CHECK(format_fixed(22.502291) == "22.5023");
    CHECK(format_fixed(0.0) == "0.000000");
}

TEST_CASE("summary rows match the published table shape") {
    AggregateReport report;
    SchemeAggregate agg;
    agg.scheme = Scheme::EWMA_PBAC;
    agg.runs = 10;
    agg.mean_blocking = 0.1691;
    agg.ci95_blocking = 0.0140;
    agg.mean_utilization = 0.80;
    agg.ci95_utilization = 0.01;
    report.per_scheme.push_back(agg);

    auto dir = temp_dir("summary");
    emit_reports(report, {}, ExperimentConfig{}, dir);
    auto text = slurp(dir / "summary.csv");
    CHECK(text.find("EWMA-PBAC,10,0.169100,0.014000,0.800000,0.010000") !=
          std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("empty reports emit headers-only files plus a manifest") {
    auto dir = temp_dir("empty");
    auto bundle = emit_reports(AggregateReport{}, {}, ExperimentConfig{}, dir);
    CHECK(slurp(dir / "summary.csv") ==
          "scheme,runs,mean_blocking,ci95_blocking,mean_utilization,ci95_utilization\n");
    CHECK(slurp(dir / "gains.csv") ==
          "target_scheme,baseline_scheme,blocking_decrease_pct,utilization_increase_pct\n");
    CHECK(std::filesystem::exists(dir / "manifest.json"));
    bool manifest_listed = false;
    for (const auto& file : bundle.files)
        manifest_listed = manifest_listed || file.name == "manifest.json";
    CHECK(manifest_listed);
    std::filesystem::remove_all(dir);
}

TEST_CASE("identical inputs produce identical file checksums") {
    auto config = parse_config_text("experiment.runs = 2\nexperiment.horizon = 120\n"
                                    "experiment.warmup_discard = 20\n"
                                    "experiment.schemes = EWMA-PBAC,GEB\n");
    auto report = run_experiment(config);
    auto gains = compute_gains(report.per_scheme, Scheme::EWMA_PBAC);

    auto dir_a = temp_dir("det_a");
    auto dir_b = temp_dir("det_b");
    auto a = emit_reports(report, gains, config, dir_a);
    auto b = emit_reports(report, gains, config, dir_b);
    REQUIRE(a.files.size() == b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i) {
        CHECK(a.files[i].name == b.files[i].name);
        CHECK(a.files[i].checksum == b.files[i].checksum);
    }
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("every usage csv row is consistent with its run report") {
    auto config = parse_config_text("experiment.runs = 1\nexperiment.horizon = 120\n"
                                    "experiment.warmup_discard = 20\n"
                                    "experiment.schemes = SWMSA\n");
    auto report = run_experiment(config);
    auto dir = temp_dir("series");
    emit_reports(report, {}, config, dir);
    auto text = slurp(dir / "usage_SWMSA.csv");
    std::size_t rows = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
    CHECK(rows == report.runs[0].usage_series.size() + 1); // header + samples
    std::filesystem::remove_all(dir);
}
