// End-to-end checks of the command-line binary. The test runner passes
// the binary path through REMOTEPROJ_CLI.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("REMOTEPROJ_CLI");
  REQUIRE_MESSAGE(env != nullptr, "REMOTEPROJ_CLI must point at the binary");
  return env;
}

struct CommandResult {
  int exit_code{0};
  std::string output;
};

CommandResult run_command(const std::string& args) {
  const fs::path out_file = fs::temp_directory_path() / "remoteproj_cli_output.txt";
  const std::string cmd = cli_path() + " " + args + " > " + out_file.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  result.output = ss.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n' ? 1 : 0;
  return lines;
}

}  // namespace

TEST_CASE("run stripe_example produces the expected artifacts") {
  const fs::path dir = fresh_dir("remoteproj_cli_stripe");
  const CommandResult result = run_command("run --scenario stripe_example --out " + dir.string());
  CHECK(result.exit_code == 0);

  const std::string trace = slurp(dir / "trace.csv");
  CHECK(count_lines(trace) == 3);  // header + 2 steps
  CHECK(trace.rfind("n,alpha,dist_chosen,dist_max,t_required,t_effective,step_norm,x_norm,sin_eps\n",
                    0) == 0);

  const nlohmann::json report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["stop_reason"] == "in_intersection");
  CHECK(report["limit"][0].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(report["limit"][1].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report["norm_cauchy"].get<bool>());

  // deterministic re-run reproduces the trace byte for byte
  const fs::path dir2 = fresh_dir("remoteproj_cli_stripe2");
  run_command("run --scenario stripe_example --out " + dir2.string());
  CHECK(slurp(dir2 / "trace.csv") == trace);
}

TEST_CASE("config round trip reproduces the trace") {
  const fs::path dir = fresh_dir("remoteproj_cli_roundtrip");
  const CommandResult first = run_command(
      "run --scenario cap_lines --t power:1 --horizon 400 --dim 4 --seed 7 --out " + dir.string());
  CHECK(first.exit_code == 0);
  const std::string trace = slurp(dir / "trace.csv");

  const fs::path dir2 = fresh_dir("remoteproj_cli_roundtrip2");
  const CommandResult second = run_command("run --config " + (dir / "config.json").string() +
                                           " --out " + dir2.string());
  CHECK(second.exit_code == 0);
  CHECK(slurp(dir2 / "trace.csv") == trace);
}

TEST_CASE("cap_lines golden run reports no norm convergence") {
  const fs::path dir = fresh_dir("remoteproj_cli_cap");
  const CommandResult result = run_command(
      "run --scenario cap_lines --t power:1 --horizon 2000 --dim 8 --seed 7 --out " + dir.string());
  CHECK(result.exit_code == 0);
  const nlohmann::json report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK_FALSE(report["norm_cauchy"].get<bool>());
  CHECK(report["weakness_flags"].get<int>() == 0);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_command("run --config missing.json").exit_code == 1);
  CHECK(run_command("run --scenario no_such_scenario").exit_code == 1);
  CHECK(run_command("run").exit_code == 1);
  CHECK(run_command("analyze --schedule nonsense:1 --M 10").exit_code == 1);
}

TEST_CASE("analyze prints partial sums and witness values") {
  const CommandResult result = run_command("analyze --schedule constant:1 --M 1000");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("a_1 = 1") != std::string::npos);
  CHECK(result.output.find("0.61803398874989") != std::string::npos);
  CHECK(result.output.find("holds") != std::string::npos);

  const CommandResult zero = run_command("analyze --schedule constant:0 --M 100 --window 0.5,3");
  CHECK(zero.exit_code == 0);
  CHECK(zero.output.find("sum t_n^2      = 0") != std::string::npos);
  CHECK(zero.output.find("violated") != std::string::npos);

  const CommandResult quarter = run_command("analyze --schedule power:0.5 --M 4");
  CHECK(quarter.exit_code == 0);
  // 25/12
  CHECK(quarter.output.find("2.08333333333333") != std::string::npos);
}

TEST_CASE("analyze writes a witness csv on request") {
  const fs::path dir = fresh_dir("remoteproj_cli_witness");
  const fs::path csv = dir / "witness.csv";
  const CommandResult result =
      run_command("analyze --schedule constant:1 --M 50 --witness-csv " + csv.string());
  CHECK(result.exit_code == 0);
  const std::string content = slurp(csv);
  CHECK(count_lines(content) == 51);
  CHECK(content.rfind("m,t,a,partial_sum,b\n", 0) == 0);
}

TEST_CASE("list names the built-in scenarios") {
  const CommandResult result = run_command("list");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("stripe_example") != std::string::npos);
  CHECK(result.output.find("cap_lines") != std::string::npos);
  CHECK(result.output.find("ball_interior") != std::string::npos);
  CHECK(result.output.find("quasi_periodic") != std::string::npos);
  CHECK(result.output.find("not runnable") != std::string::npos);
}

TEST_CASE("parallel scenario fan-out writes one directory per scenario") {
  const fs::path dir = fresh_dir("remoteproj_cli_jobs");
  const CommandResult result = run_command(
      "run --scenario stripe_example,ball_interior --jobs 2 --horizon 200 --out " + dir.string());
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(dir / "stripe_example" / "trace.csv"));
  CHECK(fs::exists(dir / "ball_interior" / "trace.csv"));
}
