#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace evospi::cli {

enum class Command { Partition, MaxCut, Sweep, Noise, Oracle, ExportPatterns };

enum class BackendKind { Ideal, Noisy, Replay };

struct BackendConfig {
  BackendKind kind = BackendKind::Ideal;
  double sigma = 0.01;
  int bits = 12;
  double offset = 0.0;
  std::string replay_path;
};

// The fully validated command line. Exactly one instance source (inline
// numbers, an instance file, or the seeded generator) is set for commands
// that need one.
struct CliConfig {
  Command command = Command::Partition;

  std::optional<std::string> instance_path;
  std::optional<std::vector<std::int64_t>> inline_numbers;
  std::optional<std::size_t> gen_n;
  std::uint64_t gen_seed = 1;

  std::size_t k = 6;
  std::optional<std::size_t> elites;      // default max(1, k/3)
  std::optional<double> mutation_rate;    // default 0.1 (scaling sweep: 2/N)
  std::size_t max_iters = 20;
  std::uint64_t seed = 1;

  BackendConfig backend;

  std::filesystem::path out_dir = "out";
  std::string format = "csv";  // csv | json
  bool export_images = false;

  // sweep (its own GA defaults; mutation falls back to 2/N per instance size)
  std::size_t n_from = 10;
  std::size_t n_to = 100;
  std::size_t n_step = 10;
  std::size_t trials = 20;
  std::size_t cap = 5000;
  std::size_t sweep_k = 12;
  std::optional<std::size_t> sweep_elites;  // default 1
  std::string sweep_instances = "auto";     // auto | perfect
  unsigned threads = 1;

  // noise
  std::vector<double> sigmas;
  std::size_t noise_trials = 100;

  // export-patterns
  std::optional<std::vector<int>> spins;
};

// Invalid usage; the message names the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --help was requested; what() carries the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// args excludes the program name
CliConfig parse_args(const std::vector<std::string>& args);

// Runs the requested pipeline and writes the out_dir artifacts.
// Exit codes: 0 success, 2 iteration budget exhausted without reaching the
// known target, 1 error.
int execute(const CliConfig& config);

int run_cli(int argc, char** argv);

}  // namespace evospi::cli
