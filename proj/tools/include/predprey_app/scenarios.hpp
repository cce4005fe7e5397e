#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "predprey_app/config.hpp"

namespace predprey::app {

/// Names of the scenarios the acceptance suite runs. Each one ships as
/// `<name>.conf` in the scenario directory and is also compiled in.
const std::vector<std::string_view>& scenario_names();

/// Compiled-in copy of a scenario; throws ValidationError for unknown names.
RunConfig builtin_scenario(std::string_view name);

/// Reads `<dir>/<name>.conf`.
RunConfig load_scenario(const std::filesystem::path& dir, std::string_view name);

/// Source-tree scenario directory recorded at build time (may not exist
/// after installation).
std::filesystem::path default_scenario_dir();

} // namespace predprey::app
