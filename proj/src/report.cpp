#include "mbac/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mbac/config.hpp"

namespace mbac {

std::string format_fixed(double value) {
    int decimals = 6;
    if (value != 0.0 && std::isfinite(value)) {
        int exp = static_cast<int>(std::floor(std::log10(std::fabs(value))));
        decimals = std::clamp(5 - exp, 0, 6);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string opt_fixed(const std::optional<double>& value) {
    return value ? format_fixed(*value) : "na";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out)
        throw IoError("write failed: " + path.string());
}

} // namespace

OutputBundle emit_reports(const AggregateReport& report, const std::vector<GainRow>& gains,
                          const ExperimentConfig& config,
                          const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory: " + out_dir.string());

    OutputBundle bundle;
    bundle.directory = out_dir;
    auto emit = [&](const std::string& name, const std::string& content) {
        write_file(out_dir / name, content);
        bundle.files.push_back(OutputFile{name, fnv1a_hex(content)});
    };

    // One usage-series file per scheme, runs concatenated in seed order.
    std::vector<Scheme> schemes;
    for (const auto& run : report.runs)
        if (std::find(schemes.begin(), schemes.end(), run.scheme) == schemes.end())
            schemes.push_back(run.scheme);
    for (Scheme scheme : schemes) {
        std::ostringstream csv;
        csv << "timestamp_s,usage_bps,moving_avg_bps,scheme,run_seed\n";
        for (const auto& run : report.runs) {
            if (run.scheme != scheme)
                continue;
            for (const auto& row : run.usage_series)
                csv << format_fixed(row.timestamp) << ',' << format_fixed(row.usage_bps)
                    << ',' << format_fixed(row.moving_avg_bps) << ',' << scheme_name(scheme)
                    << ',' << run.seed << "\n";
        }
        emit("usage_" + scheme_name(scheme) + ".csv", csv.str());
    }

    {
        std::ostringstream csv;
        csv << "scheme,runs,mean_blocking,ci95_blocking,mean_utilization,ci95_utilization\n";
        for (const auto& agg : report.per_scheme)
            csv << scheme_name(agg.scheme) << ',' << agg.runs << ','
                << format_fixed(agg.mean_blocking) << ',' << opt_fixed(agg.ci95_blocking)
                << ',' << format_fixed(agg.mean_utilization) << ','
                << opt_fixed(agg.ci95_utilization) << "\n";
        emit("summary.csv", csv.str());
    }

    {
        std::ostringstream csv;
        csv << "target_scheme,baseline_scheme,blocking_decrease_pct,utilization_increase_pct\n";
        for (const auto& row : gains)
            csv << scheme_name(row.target) << ',' << scheme_name(row.baseline) << ','
                << opt_fixed(row.blocking_decrease_pct) << ','
                << opt_fixed(row.utilization_increase_pct) << "\n";
        emit("gains.csv", csv.str());
    }

    nlohmann::json manifest;
    manifest["parameters"] = serialize_config(config);
    auto seeds = nlohmann::json::array();
    for (unsigned i = 0; i < config.runs; ++i)
        seeds.push_back(config.base_seed + i);
    manifest["seeds"] = seeds;
    auto files = nlohmann::json::array();
    for (const auto& file : bundle.files)
        files.push_back({{"name", file.name}, {"checksum", file.checksum}});
    manifest["files"] = files;
    std::string manifest_text = manifest.dump(2) + "\n";
    write_file(out_dir / "manifest.json", manifest_text);
    bundle.files.push_back(OutputFile{"manifest.json", fnv1a_hex(manifest_text)});

    return bundle;
}

} // namespace mbac
