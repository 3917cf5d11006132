#ifndef MBAC_REPORT_HPP
#define MBAC_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "mbac/experiment.hpp"

namespace mbac {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputFile {
    std::string name;       // relative to the bundle directory
    std::string checksum;   // fnv1a-64 of the file bytes, hex
};

struct OutputBundle {
    std::filesystem::path directory;
    std::vector<OutputFile> files; // includes the manifest itself, unsummed
};

/// Fixed-notation rendering with 6 significant digits (0.1691 -> "0.169100",
/// 1e7 -> "10000000").
std::string format_fixed(double value);

std::string fnv1a_hex(const std::string& bytes);

/// Writes the usage-series CSV per scheme, the summary and gains CSVs, and a
/// manifest listing parameters, seeds and per-file checksums. Byte-identical
/// for identical inputs.
OutputBundle emit_reports(const AggregateReport& report, const std::vector<GainRow>& gains,
                          const ExperimentConfig& config,
                          const std::filesystem::path& out_dir);

} // namespace mbac

#endif
