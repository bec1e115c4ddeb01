#pragma once
#include <filesystem>
#include <string>

#include "sensorsel/engines.hpp"
#include "sensorsel/network.hpp"

#include <nlohmann/json_fwd.hpp>

namespace sensorsel {

/// A sensor-network config file failed to parse or validate; the message
/// carries the offending field path (or byte position for syntax errors).
struct ConfigError : Error {
    using Error::Error;
};

struct LoadedConfig {
    SensorNetwork network;
    TestKind kind;
    TestPlan plan;
    std::string threshold_note; // non-empty when eta_k came from Eq.-(5)-style inputs
};

/// Parse and validate a JSON network config. Unknown fields are rejected.
LoadedConfig load_config(const std::filesystem::path& path);
LoadedConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Serialize back to the config schema (direct-threshold form); reloading
/// yields a field-for-field identical network.
nlohmann::json config_to_json(const SensorNetwork& network, const TestPlan& plan);

} // namespace sensorsel
