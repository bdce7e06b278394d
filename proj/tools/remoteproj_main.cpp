#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "remoteproj/diagnostics.hpp"
#include "remoteproj/runner.hpp"
#include "remoteproj/schedules.hpp"
#include "remoteproj/trace_io.hpp"

namespace {

using namespace remoteproj;

// "kind:params", e.g. constant:1, power:0.5, harmonic_log,
// explicit:0.9,0.1, alternating:1,0
Schedule parse_schedule_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) params.push_back(std::stod(item));
    }
  }
  if (kind == "constant") {
    if (params.size() != 1) throw std::invalid_argument("constant schedule needs one value");
    return Schedule::constant(params[0]);
  }
  if (kind == "power") {
    if (params.size() != 1) throw std::invalid_argument("power schedule needs one exponent");
    return Schedule::power(params[0]);
  }
  if (kind == "harmonic_log") {
    if (!params.empty()) throw std::invalid_argument("harmonic_log takes no parameters");
    return Schedule::harmonic_log();
  }
  if (kind == "explicit") return Schedule::explicit_values(params);
  if (kind == "alternating") {
    if (params.size() != 2) throw std::invalid_argument("alternating schedule needs hi,lo");
    return Schedule::alternating(params[0], params[1]);
  }
  throw std::invalid_argument("unknown schedule spec '" + spec + "'");
}

std::filesystem::path default_out_root() {
  if (const char* env = std::getenv("REMOTEPROJ_OUT")) return env;
  return "out";
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

int cmd_run(const std::string& scenarios_arg, const std::string& config_path,
            const std::string& out_arg, const std::string& t_spec,
            std::optional<std::int64_t> horizon, std::optional<std::size_t> dim,
            std::optional<std::uint64_t> seed, std::optional<double> tol,
            std::optional<std::int64_t> stride, int jobs) {
  std::vector<RunManifest> manifests;
  const std::filesystem::path out_root =
      out_arg.empty() ? default_out_root() : std::filesystem::path(out_arg);

  auto apply_overrides = [&](RunManifest& manifest) {
    if (!t_spec.empty()) manifest.schedule = parse_schedule_spec(t_spec);
    manifest.horizon = horizon;
    manifest.dim = dim;
    manifest.seed = seed;
    manifest.tol = tol;
    manifest.stride = stride;
  };

  if (!config_path.empty()) {
    RunManifest manifest;
    manifest.config_path = config_path;
    manifest.out_dir = out_root;
    apply_overrides(manifest);
    manifests.push_back(std::move(manifest));
  } else {
    const std::vector<std::string> names = split_csv(scenarios_arg);
    if (names.empty()) throw std::invalid_argument("run: need --scenario or --config");
    for (const std::string& name : names) {
      RunManifest manifest;
      manifest.scenario = name;
      manifest.out_dir = names.size() == 1 ? out_root : out_root / name;
      apply_overrides(manifest);
      manifests.push_back(std::move(manifest));
    }
  }

  std::atomic<std::size_t> next{0};
  std::atomic<int> worst_exit{0};
  std::mutex io_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= manifests.size()) return;
      try {
        const RunOutcome outcome = execute_run(manifests[i]);
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cout << outcome.report["scenario"].get<std::string>() << ": "
                  << outcome.report["stop_reason"].get<std::string>() << " after "
                  << outcome.report["steps"] << " steps -> " << outcome.trace_csv.string();
        if (outcome.exit_code != 0) std::cout << "  [invariant check FAILED]";
        std::cout << '\n';
        int expected = worst_exit.load();
        while (outcome.exit_code > expected &&
               !worst_exit.compare_exchange_weak(expected, outcome.exit_code)) {
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cerr << "error: " << e.what() << '\n';
        worst_exit.store(1);
      }
    }
  };

  const int thread_count = std::max(1, std::min<int>(jobs, (int)manifests.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < thread_count; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return worst_exit.load();
}

int cmd_analyze(const std::string& schedule_spec, std::int64_t M,
                const std::vector<std::string>& window_specs,
                const std::string& witness_csv) {
  const Schedule schedule = parse_schedule_spec(schedule_spec);

  const PartialSums sums = partial_sum_diagnostics(schedule, M);
  std::cout << "schedule " << schedule_spec << ", M = " << M << '\n';
  std::cout << "  sum t_n^2      = " << format_double(sums.sum_sq) << '\n';
  std::cout << "  sum t_n/(n+1)  = " << format_double(sums.sum_over_n) << '\n';
  std::cout << "  summability label: " << to_string(classify_condition_t(schedule)) << '\n';

  for (const std::string& spec : window_specs) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--window expects delta,K");
    const double delta = std::stod(spec.substr(0, comma));
    const std::int64_t K = std::stoll(spec.substr(comma + 1));
    const WindowCheck check = check_window_condition(schedule, delta, K, M);
    std::cout << "  window (delta=" << delta << ", K=" << K << "): "
              << (check.satisfied ? "satisfied" : "violated");
    if (check.first_violation)
      std::cout << " first at n = " << *check.first_violation;
    std::cout << '\n';
  }

  const WitnessSequence witness = build_extremal_witness(schedule, M);
  std::cout << "  extremal witness:\n";
  for (std::size_t i = 0; i < witness.a.size() && i < 5; ++i)
    std::cout << "    a_" << (i + 1) << " = " << format_double(witness.a[i]) << '\n';
  double running = 0.0;
  std::int64_t decade = 10;
  for (std::size_t i = 0; i < witness.a.size(); ++i) {
    running += witness.a[i] * witness.a[i];
    if ((std::int64_t)(i + 1) == decade) {
      std::cout << "    sum a^2 at m = " << decade << ": " << format_double(running) << '\n';
      decade *= 10;
    }
  }
  std::cout << "    sum a^2 at m = " << M << ": " << format_double(witness.sum_sq) << '\n';

  if (!witness_csv.empty()) {
    std::ofstream out(witness_csv, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + witness_csv);
    out << "m,t,a,partial_sum,b\n";
    for (std::size_t i = 0; i < witness.a.size(); ++i) {
      out << (i + 1) << ',' << format_double(schedule.at((std::int64_t)i)) << ','
          << format_double(witness.a[i]) << ',' << format_double(witness.partial_sum[i])
          << ',' << format_double(witness.b[i]) << '\n';
    }
    std::cout << "  witness written to " << witness_csv << '\n';
  }
  return 0;
}

int cmd_list() {
  for (const ScenarioInfo& info : list_scenarios()) {
    std::cout << info.name << (info.runnable ? "" : " (not runnable)") << "\n    "
              << info.summary << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"remote projections onto families of closed convex sets"};
  app.require_subcommand(1);

  std::string scenario, config_path, out_dir, t_spec, witness_csv;
  std::int64_t horizon = -1, stride = -1, analyze_M = 1000;
  std::size_t dim = 0;
  std::int64_t seed = -1;
  double tol = -1.0;
  int jobs = 1;
  std::string analyze_schedule;
  std::vector<std::string> window_specs;

  CLI::App* run = app.add_subcommand("run", "run a scenario and export trace/report/config");
  run->add_option("--scenario", scenario, "built-in scenario name(s), comma separated");
  run->add_option("--config", config_path, "scenario config JSON");
  run->add_option("--out", out_dir, "output directory (default $REMOTEPROJ_OUT or ./out)");
  run->add_option("--t", t_spec, "weakness schedule, kind:params (e.g. power:1)");
  run->add_option("--horizon", horizon, "iteration budget");
  run->add_option("--dim", dim, "ambient dimension");
  run->add_option("--seed", seed, "construction seed");
  run->add_option("--tol", tol, "stopping tolerance");
  run->add_option("--stride", stride, "iterate retention stride");
  run->add_option("--jobs", jobs, "parallel scenario runs")->check(CLI::PositiveNumber);

  CLI::App* analyze = app.add_subcommand("analyze", "partial sums, window condition, extremal witness");
  analyze->add_option("--schedule", analyze_schedule, "schedule spec, kind:params")->required();
  analyze->add_option("--M", analyze_M, "number of terms")->check(CLI::PositiveNumber);
  analyze->add_option("--window", window_specs, "window condition pair delta,K (repeatable)");
  analyze->add_option("--witness-csv", witness_csv, "write the witness sequence to this file");

  CLI::App* list_cmd = app.add_subcommand("list", "list built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      return cmd_run(scenario, config_path, out_dir, t_spec,
                     horizon >= 0 ? std::optional<std::int64_t>(horizon) : std::nullopt,
                     dim > 0 ? std::optional<std::size_t>(dim) : std::nullopt,
                     seed >= 0 ? std::optional<std::uint64_t>((std::uint64_t)seed) : std::nullopt,
                     tol >= 0.0 ? std::optional<double>(tol) : std::nullopt,
                     stride >= 1 ? std::optional<std::int64_t>(stride) : std::nullopt, jobs);
    }
    if (analyze->parsed()) return cmd_analyze(analyze_schedule, analyze_M, window_specs, witness_csv);
    if (list_cmd->parsed()) return cmd_list();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
