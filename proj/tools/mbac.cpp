#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "mbac/config.hpp"
#include "mbac/report.hpp"

namespace {

void print_summary(const mbac::AggregateReport& report) {
    for (const auto& agg : report.per_scheme) {
        std::printf("%-10s blocking %s", mbac::scheme_name(agg.scheme).c_str(),
                    mbac::format_fixed(agg.mean_blocking).c_str());
        if (agg.ci95_blocking)
            std::printf(" \xc2\xb1%s", mbac::format_fixed(*agg.ci95_blocking).c_str());
        std::printf("  utilization %s", mbac::format_fixed(agg.mean_utilization).c_str());
        if (agg.ci95_utilization)
            std::printf(" \xc2\xb1%s", mbac::format_fixed(*agg.ci95_utilization).c_str());
        std::printf("\n");
    }
}

void print_gains(const std::vector<mbac::GainRow>& gains) {
    for (const auto& row : gains) {
        std::printf("%s vs %-10s", mbac::scheme_name(row.target).c_str(),
                    mbac::scheme_name(row.baseline).c_str());
        std::printf("  blocking decrease %s%%",
                    row.blocking_decrease_pct
                        ? mbac::format_fixed(*row.blocking_decrease_pct).c_str()
                        : "na");
        std::printf("  utilization increase %s%%\n",
                    row.utilization_increase_pct
                        ? mbac::format_fixed(*row.utilization_increase_pct).c_str()
                        : "na");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Admission-control comparison simulator for a token-bucket bottleneck"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::string scheme_override;
    std::uint64_t seed_override = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* cmd, bool with_output) {
        cmd->add_option("-c,--config", config_path, "experiment config file")->required();
        if (with_output) {
            cmd->add_option("-o,--out", out_dir, "output directory (default: out)");
            cmd->add_option("--seed", seed_override, "override experiment.base_seed")
                ->each([&](const std::string&) { seed_set = true; });
        }
    };

    auto* run = app.add_subcommand("run", "run the configured experiment and emit reports");
    add_common(run, true);
    run->add_option("--scheme", scheme_override,
                    "run only this scheme (PBAC-ES, SWMSA, GEB, EWMA-PBAC)");

    auto* compare = app.add_subcommand(
        "compare", "run all four schemes on shared seeds and emit the gain table");
    add_common(compare, true);

    auto* validate = app.add_subcommand("validate-config", "parse and echo the config");
    add_common(validate, false);

    CLI11_PARSE(app, argc, argv);

    try {
        mbac::ExperimentConfig config = mbac::parse_config(config_path);
        if (seed_set)
            config.base_seed = seed_override;

        if (validate->parsed()) {
            std::cout << mbac::serialize_config(config);
            return 0;
        }

        if (compare->parsed())
            config.schemes = {mbac::Scheme::PBAC_ES, mbac::Scheme::SWMSA, mbac::Scheme::GEB,
                              mbac::Scheme::EWMA_PBAC};
        else if (!scheme_override.empty())
            config.schemes = {mbac::scheme_from_name(scheme_override)};

        auto report = mbac::run_experiment(config);
        std::vector<mbac::GainRow> gains;
        if (std::find(config.schemes.begin(), config.schemes.end(),
                      mbac::Scheme::EWMA_PBAC) != config.schemes.end() &&
            config.schemes.size() > 1)
            gains = mbac::compute_gains(report.per_scheme, mbac::Scheme::EWMA_PBAC);

        auto bundle = mbac::emit_reports(report, gains, config, out_dir);
        print_summary(report);
        if (!gains.empty())
            print_gains(gains);
        std::printf("wrote %zu files to %s\n", bundle.files.size(),
                    bundle.directory.string().c_str());
        return 0;
    } catch (const mbac::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const mbac::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
