#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "evospi/pnm.hpp"
#include "evospi/problems.hpp"
#include "evospi/spi.hpp"

using namespace evospi;
using nlohmann::json;

namespace {

std::filesystem::path fresh_dir(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// exit status plus combined stdout/stderr of the installed binary
struct ToolResult {
  int status = -1;
  std::string output;
};

ToolResult run_tool(const std::string& args) {
  const std::string cmd = std::string(EVOSPI_TOOL_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  ToolResult res;
  char buf[512];
  while (fgets(buf, sizeof(buf), pipe)) res.output += buf;
  const int rc = pclose(pipe);
  res.status = WEXITSTATUS(rc);
  return res;
}

cli::CliConfig parse(std::initializer_list<std::string> args) {
  return cli::parse_args(std::vector<std::string>(args));
}

}  // namespace

TEST_CASE("solver flags parse into a validated config") {
  auto cfg = parse({"partition", "--numbers", "2,4,5,6,9", "--k", "8",
                    "--elites", "3", "--mutation-rate", "0.2", "--max-iters",
                    "15", "--seed", "7"});
  CHECK(cfg.command == cli::Command::Partition);
  REQUIRE(cfg.inline_numbers.has_value());
  CHECK(*cfg.inline_numbers == std::vector<std::int64_t>{2, 4, 5, 6, 9});
  CHECK(cfg.k == 8);
  CHECK(cfg.elites == std::size_t{3});
  CHECK(cfg.mutation_rate == 0.2);
  CHECK(cfg.max_iters == 15);
  CHECK(cfg.seed == 7);
  CHECK(cfg.backend.kind == cli::BackendKind::Ideal);
  CHECK(cfg.format == "csv");
}

TEST_CASE("backend flags select and parameterize the detector model") {
  auto noisy = parse({"partition", "--numbers", "2,4", "--backend", "noisy",
                      "--sigma", "0.05", "--bits", "8", "--offset", "1.5"});
  CHECK(noisy.backend.kind == cli::BackendKind::Noisy);
  CHECK(noisy.backend.sigma == 0.05);
  CHECK(noisy.backend.bits == 8);
  CHECK(noisy.backend.offset == 1.5);

  // a replay trace implies the replay backend
  auto replay = parse({"partition", "--numbers", "2,4", "--replay", "trace.txt"});
  CHECK(replay.backend.kind == cli::BackendKind::Replay);
  CHECK(replay.backend.replay_path == "trace.txt");
}

TEST_CASE("invalid usage is rejected with a usage error") {
  // no instance source
  CHECK_THROWS_AS(parse({"partition"}), cli::UsageError);
  // two instance sources
  CHECK_THROWS_AS(parse({"partition", "--numbers", "1,2", "--gen-n", "5"}),
                  cli::UsageError);
  // noise knobs without the noisy backend
  CHECK_THROWS_AS(parse({"partition", "--numbers", "1,2", "--sigma", "0.5"}),
                  cli::UsageError);
  // replay backend without a trace
  CHECK_THROWS_AS(parse({"partition", "--numbers", "1,2", "--backend", "replay"}),
                  cli::UsageError);
  // elite count must stay below the population
  CHECK_THROWS_AS(parse({"partition", "--numbers", "1,2", "--k", "6", "--elites", "6"}),
                  cli::UsageError);
  // non-positive numbers cannot form an instance
  CHECK_THROWS_AS(parse({"partition", "--numbers", "0,5"}), cli::UsageError);
  CHECK_THROWS_AS(parse({"partition", "--numbers", "7"}), cli::UsageError);
  // inverted sweep range
  CHECK_THROWS_AS(parse({"sweep", "--n-from", "20", "--n-to", "10"}), cli::UsageError);
  // malformed spins
  CHECK_THROWS_AS(parse({"export-patterns", "--spins", "1,0,1"}), cli::UsageError);
  CHECK_THROWS_AS(parse({"export-patterns", "--spins", "1"}), cli::UsageError);
  // unknown subcommand and unknown flag
  CHECK_THROWS_AS(parse({"frobnicate"}), cli::UsageError);
  CHECK_THROWS_AS(parse({"partition", "--numbers", "1,2", "--no-such-flag"}),
                  cli::UsageError);
  // sigma list entries must be non-negative, large values are legal
  CHECK_THROWS_AS(parse({"noise", "--numbers", "1,2", "--sigmas", "-1"}),
                  cli::UsageError);
  CHECK_NOTHROW(parse({"noise", "--numbers", "1,2", "--sigmas", "0,0.01,10"}));
}

TEST_CASE("help is reported through its own channel") {
  try {
    parse({"--help"});
    FAIL("expected help");
  } catch (const cli::HelpRequested& e) {
    const std::string text = e.what();
    CHECK(text.find("partition") != std::string::npos);
    CHECK(text.find("sweep") != std::string::npos);
  }
}

TEST_CASE("solving a small instance writes the full artifact set") {
  const auto dir = fresh_dir("evospi_cli_solve");
  auto cfg = parse({"partition", "--numbers", "2,4,5,6,9", "--k", "6",
                    "--max-iters", "30", "--seed", "3", "--out", dir.string(),
                    "--export-images"});
  CHECK(cli::execute(cfg) == 0);

  const std::string curve = slurp(dir / "curve.csv");
  CHECK(curve.rfind("iteration,best_objective,best_intensity\n", 0) == 0);
  CHECK(std::filesystem::exists(dir / "curve.gp"));
  CHECK(std::filesystem::exists(dir / "states.txt"));
  CHECK(std::filesystem::exists(dir / "weights.pgm"));
  CHECK(std::filesystem::exists(dir / "best_pattern.pbm"));

  const json result = json::parse(slurp(dir / "result.json"));
  CHECK(result["problem"] == "partition");
  CHECK(result["n"] == 5);
  CHECK(result["config"]["population_k"] == 6);
  CHECK(result["config"]["backend"]["type"] == "ideal");
  CHECK(result["best"]["objective"] == 0.0);
  CHECK(result["oracle"]["value"] == 0.0);
  CHECK(result["oracle"]["matched"] == true);
  CHECK(result["converged_at"].is_number_integer());

  // groups restate the winning split
  const auto sum = [](const json& arr) {
    std::int64_t s = 0;
    for (const auto& v : arr) s += v.get<std::int64_t>();
    return s;
  };
  CHECK(sum(result["best"]["groups"]["a"]) == sum(result["best"]["groups"]["b"]));
  std::filesystem::remove_all(dir);
}

TEST_CASE("an exhausted budget returns the dedicated exit code") {
  const auto dir = fresh_dir("evospi_cli_budget");
  auto cfg = parse({"partition", "--numbers", "1,2,5,7,9,11,15,16,18", "--k",
                    "2", "--max-iters", "1", "--seed", "1", "--out", dir.string()});
  CHECK(cli::execute(cfg) == 2);
  const json result = json::parse(slurp(dir / "result.json"));
  CHECK(result["converged_at"].is_null());
  CHECK(result["oracle"]["matched"] == false);
  std::filesystem::remove_all(dir);
}

TEST_CASE("max-cut solves report the cut and never beat the oracle") {
  const auto dir = fresh_dir("evospi_cli_maxcut");
  auto cfg = parse({"maxcut", "--gen-n", "6", "--gen-seed", "5", "--k", "12",
                    "--max-iters", "25", "--seed", "2", "--out", dir.string()});
  const int rc = cli::execute(cfg);
  CHECK((rc == 0 || rc == 2));
  const json result = json::parse(slurp(dir / "result.json"));
  CHECK(result["problem"] == "maxcut");
  const double got = result["best"]["objective"].get<double>();
  const double oracle = result["oracle"]["value"].get<double>();
  CHECK(got <= oracle + 1e-9);
  MaxCutInstance inst = random_max_cut_instance(6, 5);
  CHECK(oracle == doctest::Approx(brute_force(inst).cut_value));
  std::filesystem::remove_all(dir);
}

TEST_CASE("json format swaps the curve artifact") {
  const auto dir = fresh_dir("evospi_cli_json");
  auto cfg = parse({"partition", "--numbers", "2,4,5,6,9", "--seed", "3",
                    "--format", "json", "--out", dir.string()});
  CHECK(cli::execute(cfg) == 0);
  CHECK(std::filesystem::exists(dir / "curve.json"));
  CHECK(!std::filesystem::exists(dir / "curve.csv"));
  const json curve = json::parse(slurp(dir / "curve.json"));
  REQUIRE(curve.is_array());
  REQUIRE(!curve.empty());
  CHECK(curve[0].contains("iteration"));
  CHECK(curve[0].contains("best_objective"));
  CHECK(curve[0].contains("best_intensity"));
  const json result = json::parse(slurp(dir / "result.json"));
  CHECK(result["history_path"] == "curve.json");
  std::filesystem::remove_all(dir);
}

TEST_CASE("a replayed trace drives the solver deterministically") {
  const auto dir = fresh_dir("evospi_cli_replay");
  const auto trace = dir / "trace.txt";
  {
    // two iterations of six detector readings; slot 4 carries the peak
    std::ofstream out(trace);
    for (int it = 0; it < 2; ++it)
      for (int k = 0; k < 6; ++k) out << (k == 4 ? 999.0 : 10.0 + k) << "\n";
  }
  auto cfg = parse({"partition", "--numbers", "2,4,5,6,9", "--k", "6",
                    "--max-iters", "2", "--seed", "3", "--replay",
                    trace.string(), "--out", dir.string()});
  const int rc = cli::execute(cfg);
  CHECK((rc == 0 || rc == 2));
  const json result = json::parse(slurp(dir / "result.json"));
  CHECK(result["config"]["backend"]["type"] == "replay");
  CHECK(result["best"]["spins"].size() == 5);
  std::filesystem::remove_all(dir);
}

TEST_CASE("pattern export writes the exact illumination image") {
  const auto dir = fresh_dir("evospi_cli_export");
  auto cfg = parse({"export-patterns", "--spins", "1,-1,1", "--out", dir.string()});
  CHECK(cli::execute(cfg) == 0);

  const auto want_path = dir / "want.pbm";
  write_pattern_pbm(pattern_from_spins(SpinVector(std::vector<std::int8_t>{1, -1, 1})),
                    want_path);
  CHECK(slurp(dir / "pattern.pbm") == slurp(want_path));
  std::filesystem::remove_all(dir);
}

TEST_CASE("sweep and noise commands emit their tables") {
  const auto dir = fresh_dir("evospi_cli_sweep");
  auto sweep = parse({"sweep", "--n-from", "4", "--n-to", "6", "--n-step", "2",
                      "--trials", "2", "--cap", "500", "--instances", "perfect",
                      "--seed", "9", "--out", dir.string()});
  CHECK(cli::execute(sweep) == 0);
  std::istringstream rows(slurp(dir / "sweep.csv"));
  std::string line;
  std::getline(rows, line);
  CHECK(line == "n,seed,iterations_to_solve,wall_time_s");
  std::size_t data_rows = 0;
  while (std::getline(rows, line))
    if (!line.empty()) ++data_rows;
  CHECK(data_rows == 4);

  auto noise = parse({"noise", "--numbers", "2,4,5,6,9", "--sigmas", "0,0.5",
                      "--trials", "5", "--k", "4", "--max-iters", "5", "--seed",
                      "2", "--out", dir.string()});
  CHECK(cli::execute(noise) == 0);
  const std::string ncsv = slurp(dir / "noise.csv");
  CHECK(ncsv.rfind("sigma,success_rate,mean_iterations\n", 0) == 0);
  CHECK(std::count(ncsv.begin(), ncsv.end(), '\n') == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("identical invocations produce byte-identical artifacts") {
  const auto a = fresh_dir("evospi_cli_det_a");
  const auto b = fresh_dir("evospi_cli_det_b");
  for (const auto& dir : {a, b}) {
    auto cfg = parse({"partition", "--numbers", "1,2,3,4,5,6,7", "--k", "6",
                      "--backend", "noisy", "--sigma", "0.01", "--seed", "11",
                      "--out", dir.string()});
    cli::execute(cfg);
  }
  CHECK(slurp(a / "curve.csv") == slurp(b / "curve.csv"));
  CHECK(slurp(a / "states.txt") == slurp(b / "states.txt"));
  CHECK(slurp(a / "result.json") == slurp(b / "result.json"));
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST_CASE("the installed binary wires arguments to exit codes") {
  const auto dir = fresh_dir("evospi_cli_bin");

  auto ok = run_tool("partition --numbers 2,4,5,6,9 --seed 3 --out " +
                     (dir / "run").string());
  CHECK(ok.status == 0);
  CHECK(ok.output.find("best objective") != std::string::npos);

  auto oracle = run_tool("oracle --numbers 2,4,5,6,9");
  CHECK(oracle.status == 0);
  CHECK(oracle.output.find("partition") != std::string::npos);
  CHECK(oracle.output.find("optimum") != std::string::npos);

  auto usage = run_tool("partition");
  CHECK(usage.status == 1);
  CHECK(usage.output.find("usage error") != std::string::npos);

  auto help = run_tool("--help");
  CHECK(help.status == 0);
  CHECK(help.output.find("partition") != std::string::npos);

  auto missing = run_tool("partition --instance /no/such/file.txt --out " +
                          (dir / "x").string());
  CHECK(missing.status == 1);
  CHECK(missing.output.find("error") != std::string::npos);
  std::filesystem::remove_all(dir);
}
