#ifndef MBAC_CONFIG_HPP
#define MBAC_CONFIG_HPP

#include <filesystem>
#include <string>

#include "mbac/experiment.hpp"

namespace mbac {

/// Parses a flat key=value config with dotted section keys
/// (e.g. traffic.mean_interarrival = 6). '#' starts a comment. Absent keys
/// take the documented defaults; unknown keys are an error.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Canonical textual form; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

} // namespace mbac

#endif
