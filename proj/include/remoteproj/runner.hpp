#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "remoteproj/engine.hpp"
#include "remoteproj/scenarios.hpp"

namespace remoteproj {

struct RunManifest {
  std::string scenario;     // built-in scenario name (empty when config_path set)
  std::string config_path;  // path to a scenario JSON (empty when scenario set)
  std::filesystem::path out_dir;
  std::optional<double> tol;             // default 1e-12
  std::optional<std::int64_t> stride;    // default: auto by dimension
  std::optional<std::uint64_t> seed;     // scenario-construction seed override
  std::optional<std::int64_t> horizon;   // horizon override
  std::optional<std::size_t> dim;        // ambient dimension override
  std::optional<Schedule> schedule;      // weakness schedule override
};

struct ScenarioInfo {
  std::string name;
  std::string summary;
  bool runnable{true};
};

const std::vector<ScenarioInfo>& list_scenarios();

/// Builds the scenario named in the manifest (or loads its config file),
/// applying the overrides that the scenario accepts.
ScenarioConfig build_scenario(const RunManifest& manifest);

struct RunOutcome {
  int exit_code{0};  // 0 ok, 2 when an invariant check failed
  Trace trace;
  nlohmann::json report;
  std::filesystem::path trace_csv;
  std::filesystem::path report_json;
  std::filesystem::path config_json;
};

/// Runs one scenario end to end: execute, evaluate the scenario's
/// invariant checks, write trace.csv / report.json / config.json into the
/// output directory. Exit code 2 signals "ran fine but a check failed";
/// the failing check is named in the report.
RunOutcome execute_run(const RunManifest& manifest);

/// Runs the scenario without touching the filesystem (library entry point
/// shared with execute_run).
RunOutcome run_scenario(const ScenarioConfig& config, double tol,
                        std::int64_t stride);

}  // namespace remoteproj
