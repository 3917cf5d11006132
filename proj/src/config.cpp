#include "mbac/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace mbac {

namespace {

std::string trim(std::string_view s) {
    auto begin = s.find_first_not_of(" \t\r");
    auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string_view::npos)
        return "";
    return std::string(s.substr(begin, end - begin + 1));
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        if (!value.empty() && value[0] == '-')
            throw std::invalid_argument(value); // stoull would wrap silently
        std::size_t used = 0;
        auto v = std::stoull(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true")
        return true;
    if (value == "false")
        return false;
    throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig config;

    std::map<std::string, std::string> kv;
    std::vector<std::string> key_order;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        std::string stripped = trim(line);
        if (stripped.empty())
            continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw ConfigError("duplicate key: " + key);
        key_order.push_back(key);
    }

    auto take = [&](const std::string& key) {
        auto it = kv.find(key);
        std::string value;
        if (it != kv.end()) {
            value = it->second;
            kv.erase(it);
        }
        return value;
    };
    auto set_double = [&](const std::string& key, double& field) {
        if (auto v = take(key); !v.empty())
            field = parse_double(key, v);
    };
    auto set_u64 = [&](const std::string& key, std::uint64_t& field) {
        if (auto v = take(key); !v.empty())
            field = parse_u64(key, v);
    };

    set_double("traffic.mean_interarrival", config.traffic.mean_interarrival);
    set_double("traffic.mean_lifetime", config.traffic.mean_lifetime);
    set_double("traffic.lifetime_min_mean", config.traffic.lifetime_min_mean);
    set_double("traffic.lifetime_max_mean", config.traffic.lifetime_max_mean);
    set_double("traffic.avg_rate", config.traffic.avg_rate);
    set_double("traffic.peak_rate", config.traffic.peak_rate);
    set_double("traffic.on_mean", config.traffic.on_mean);
    if (auto v = take("traffic.emission_model"); !v.empty()) {
        if (v == "constant")
            config.traffic.emission_model = EmissionModel::CONSTANT;
        else if (v == "on_off")
            config.traffic.emission_model = EmissionModel::ON_OFF;
        else
            throw ConfigError("traffic.emission_model: expected constant or on_off, got '" +
                              v + "'");
    }

    set_double("link.capacity", config.link.capacity);
    set_double("link.tbf_rate", config.link.tbf_rate);
    set_double("link.tbf_burst", config.link.tbf_burst);
    set_double("link.tbf_limit", config.link.tbf_limit);
    set_double("link.mtu", config.link.mtu);

    set_double("sampler.sample_period", config.sampler.sample_period);
    if (auto v = take("sampler.window_samples"); !v.empty())
        config.sampler.window_samples =
            static_cast<std::size_t>(parse_u64("sampler.window_samples", v));

    set_double("geb.epsilon", config.geb.epsilon);
    if (auto v = take("geb.dispersion_mode"); !v.empty()) {
        if (v == "stddev")
            config.geb.dispersion_mode = GebConfig::Dispersion::STDDEV;
        else if (v == "variance")
            config.geb.dispersion_mode = GebConfig::Dispersion::VARIANCE;
        else
            throw ConfigError("geb.dispersion_mode: expected stddev or variance, got '" + v +
                              "'");
    }

    set_double("ewma.beta", config.ewma_beta);
    set_double("admission.theta", config.theta);

    set_double("experiment.tick_dt", config.tick_dt);
    set_double("experiment.horizon", config.horizon);
    set_double("experiment.warmup_discard", config.warmup_discard);
    if (auto v = take("experiment.runs"); !v.empty())
        config.runs = static_cast<unsigned>(parse_u64("experiment.runs", v));
    set_u64("experiment.base_seed", config.base_seed);
    if (auto v = take("experiment.coupled_mode"); !v.empty())
        config.coupled_mode = parse_bool("experiment.coupled_mode", v);
    if (auto v = take("experiment.coupled_authority"); !v.empty())
        config.coupled_authority = scheme_from_name(v);
    if (auto v = take("experiment.moving_avg_window"); !v.empty())
        config.moving_avg_window =
            static_cast<std::size_t>(parse_u64("experiment.moving_avg_window", v));
    if (auto v = take("experiment.schemes"); !v.empty()) {
        config.schemes.clear();
        std::istringstream list(v);
        std::string token;
        while (std::getline(list, token, ','))
            config.schemes.push_back(scheme_from_name(trim(token)));
    }

    // policy.rule.<n> = tag:SCHEME entries, applied in <n> order, then the
    // mandatory policy.default.
    std::map<std::uint64_t, std::string> rule_keys;
    for (const auto& [key, value] : kv) {
        if (key.rfind("policy.rule.", 0) == 0) {
            auto n = parse_u64(key, key.substr(12));
            rule_keys.emplace(n, key);
        }
    }
    bool has_rules = !rule_keys.empty() || kv.count("policy.default");
    if (has_rules) {
        for (const auto& [n, key] : rule_keys) {
            auto v = take(key);
            auto colon = v.find(':');
            if (colon == std::string::npos)
                throw ConfigError(key + ": expected tag:SCHEME, got '" + v + "'");
            PolicyRule rule;
            rule.match_tag = trim(v.substr(0, colon));
            rule.scheme = scheme_from_name(trim(v.substr(colon + 1)));
            if (rule.match_tag.empty())
                throw ConfigError(key + ": rule tag must be non-empty (use policy.default)");
            config.policy_rules.push_back(std::move(rule));
        }
        auto def = take("policy.default");
        if (def.empty())
            throw ConfigError("policy.default is required when policy rules are present");
        config.policy_rules.push_back(PolicyRule{"", scheme_from_name(def)});
    }

    if (!kv.empty())
        throw ConfigError("unknown key: " + kv.begin()->first);

    config.validate();
    return config;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const ExperimentConfig& config) {
    std::ostringstream out;
    out << "traffic.mean_interarrival = " << fmt_double(config.traffic.mean_interarrival) << "\n"
        << "traffic.mean_lifetime = " << fmt_double(config.traffic.mean_lifetime) << "\n"
        << "traffic.lifetime_min_mean = " << fmt_double(config.traffic.lifetime_min_mean) << "\n"
        << "traffic.lifetime_max_mean = " << fmt_double(config.traffic.lifetime_max_mean) << "\n"
        << "traffic.avg_rate = " << fmt_double(config.traffic.avg_rate) << "\n"
        << "traffic.peak_rate = " << fmt_double(config.traffic.peak_rate) << "\n"
        << "traffic.emission_model = "
        << (config.traffic.emission_model == EmissionModel::CONSTANT ? "constant" : "on_off")
        << "\n"
        << "traffic.on_mean = " << fmt_double(config.traffic.on_mean) << "\n"
        << "link.capacity = " << fmt_double(config.link.capacity) << "\n"
        << "link.tbf_rate = " << fmt_double(config.link.tbf_rate) << "\n"
        << "link.tbf_burst = " << fmt_double(config.link.tbf_burst) << "\n"
        << "link.tbf_limit = " << fmt_double(config.link.tbf_limit) << "\n"
        << "link.mtu = " << fmt_double(config.link.mtu) << "\n"
        << "sampler.sample_period = " << fmt_double(config.sampler.sample_period) << "\n"
        << "sampler.window_samples = " << config.sampler.window_samples << "\n"
        << "geb.epsilon = " << fmt_double(config.geb.epsilon) << "\n"
        << "geb.dispersion_mode = "
        << (config.geb.dispersion_mode == GebConfig::Dispersion::STDDEV ? "stddev" : "variance")
        << "\n"
        << "ewma.beta = " << fmt_double(config.ewma_beta) << "\n"
        << "admission.theta = " << fmt_double(config.theta) << "\n"
        << "experiment.tick_dt = " << fmt_double(config.tick_dt) << "\n"
        << "experiment.horizon = " << fmt_double(config.horizon) << "\n"
        << "experiment.warmup_discard = " << fmt_double(config.warmup_discard) << "\n"
        << "experiment.runs = " << config.runs << "\n"
        << "experiment.base_seed = " << config.base_seed << "\n"
        << "experiment.coupled_mode = " << (config.coupled_mode ? "true" : "false") << "\n"
        << "experiment.coupled_authority = " << scheme_name(config.coupled_authority) << "\n"
        << "experiment.moving_avg_window = " << config.moving_avg_window << "\n";
    out << "experiment.schemes = ";
    for (std::size_t i = 0; i < config.schemes.size(); ++i)
        out << (i ? "," : "") << scheme_name(config.schemes[i]);
    out << "\n";
    if (!config.policy_rules.empty()) {
        std::size_t n = 1;
        for (const auto& rule : config.policy_rules)
            if (!rule.match_tag.empty())
                out << "policy.rule." << n++ << " = " << rule.match_tag << ":"
                    << scheme_name(rule.scheme) << "\n";
        for (const auto& rule : config.policy_rules)
            if (rule.match_tag.empty()) {
                out << "policy.default = " << scheme_name(rule.scheme) << "\n";
                break;
            }
    }
    return out.str();
}

} // namespace mbac
