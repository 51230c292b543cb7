#pragma once

#include <string>

#include <json.hpp>

#include "aximhd/evolve.hpp"

namespace aximhd {

/// Strict parse: unknown keys, wrong types and bad enum names throw ConfigError.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

nlohmann::json to_json(const RunConfig& cfg);

Mode parse_mode(const std::string& s);
PiScheme parse_pi_scheme(const std::string& s);
OmegaScheme parse_omega_scheme(const std::string& s);

} // namespace aximhd
