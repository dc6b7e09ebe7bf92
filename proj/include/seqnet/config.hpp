#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include <seqnet/analytics.hpp>
#include <seqnet/montecarlo.hpp>

namespace seqnet {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parsed experiment description plus the optional analytic extras.
struct LoadedConfig {
    ExperimentConfig experiment;
    std::optional<ErrorTargets> targets;
    std::optional<int> t0;           // refined-constants truncation; default from sigma2/q
    std::optional<int> sensor;       // designated sensor; absent = all sensors
    std::uint64_t mc_samples = 200000;
    bool seed_in_config = false;
    nlohmann::json raw;
};

LoadedConfig parse_config(const nlohmann::json& j);
LoadedConfig load_config_file(const std::string& path);

// Canonical form used for hashing: sorted keys, normalized number spelling.
std::string canonical_json(const nlohmann::json& j);
std::uint64_t fnv1a64(const std::string& bytes);
std::string config_digest(const nlohmann::json& j);  // "fnv1a64:<16 hex digits>"

}  // namespace seqnet
