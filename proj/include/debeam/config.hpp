#pragma once

#include <string>

#include "debeam/scenario.hpp"

// Flat sectioned key-value config. All physical quantities carry unit
// suffixes in the key names. parse(serialize(c)) == c.

namespace debeam::config {

scenario::ScenarioConfig parse(const std::string& text);
scenario::ScenarioConfig load_file(const std::string& path);
std::string serialize(const scenario::ScenarioConfig& cfg);

}  // namespace debeam::config
