#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fogsim/scenario/config.hpp"

namespace fogsim::harness {

// Line-oriented `key = value` format. `#` starts a comment, blank lines are
// ignored, keys are the ScenarioConfig field names (latency and weight
// coefficients are addressed by their own names, e.g. `base_ms`, `w_dist`).
// Unspecified keys keep their defaults.
//
// Errors: ParseError (malformed line), UnknownKey, InvalidValue; all carry the
// 1-based line number.
scenario::ScenarioConfig parse_config(std::string_view text,
                                      scenario::ScenarioConfig base = {});
scenario::ScenarioConfig load_config(const std::filesystem::path& path,
                                     scenario::ScenarioConfig base = {});

// Applies one key/value pair; throws UnknownKey or InvalidValue.
void set_config_value(scenario::ScenarioConfig& config, std::string_view key, std::string_view value);

// Every accepted key, in documentation order.
std::vector<std::string> config_keys();

// Canonical text form; parse_config(format_config(c)) reproduces c.
std::string format_config(const scenario::ScenarioConfig& config);

}  // namespace fogsim::harness
