#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "remoteproj/scenarios.hpp"

namespace remoteproj {

/// Strict JSON form of a scenario: top-level keys
/// {name, family, schedule, policy, x0, horizon, a_ref?, extras?};
/// unknown keys are rejected at every level so configs cannot drift
/// silently.
nlohmann::json scenario_to_json(const ScenarioConfig& config);
ScenarioConfig scenario_from_json(const nlohmann::json& j);

ScenarioConfig load_scenario_file(const std::filesystem::path& path);
void save_scenario_file(const std::filesystem::path& path, const ScenarioConfig& config);

}  // namespace remoteproj
