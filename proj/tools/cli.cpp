#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "evospi/bench.hpp"
#include "evospi/core.hpp"
#include "evospi/evolve.hpp"
#include "evospi/pnm.hpp"
#include "evospi/problems.hpp"
#include "evospi/rng.hpp"
#include "evospi/spi.hpp"

namespace evospi::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

WeightImage encode(const NumberPartitionInstance& inst) {
  return encode_number_partition(inst);
}
WeightImage encode(const MaxCutInstance& inst) { return encode_max_cut(inst); }

void add_ga_options(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--k", cfg.k, "population size")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  cmd->add_option("--elites", cfg.elites,
                  "elites preserved per generation (default max(1, k/3))");
  cmd->add_option("--mutation-rate", cfg.mutation_rate,
                  "per-spin mutation probability (default 0.1)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--max-iters", cfg.max_iters, "iteration budget")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000000}))
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
}

void add_instance_options(CLI::App* cmd, CliConfig& cfg, bool with_numbers,
                          bool with_generator) {
  if (with_numbers)
    cmd->add_option("--numbers", cfg.inline_numbers,
                    "comma separated positive integers to partition")
        ->delimiter(',');
  cmd->add_option("--instance", cfg.instance_path, "instance file to load");
  if (with_generator) {
    cmd->add_option("--gen-n", cfg.gen_n,
                    "generate a random instance of this size");
    cmd->add_option("--gen-seed", cfg.gen_seed, "seed for --gen-n")
        ->capture_default_str();
  }
}

void add_backend_options(CLI::App* cmd, CliConfig& cfg,
                         std::string& backend_name) {
  cmd->add_option("--backend", backend_name, "measurement backend")
      ->check(CLI::IsMember({"ideal", "noisy", "replay"}))
      ->capture_default_str();
  cmd->add_option("--sigma", cfg.backend.sigma,
                  "noisy backend: gaussian sigma as a fraction of full scale")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--bits", cfg.backend.bits,
                  "noisy backend: quantization bits, 0 disables")
      ->check(CLI::Range(0, 16))
      ->capture_default_str();
  cmd->add_option("--offset", cfg.backend.offset, "noisy backend: dark offset")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--replay", cfg.backend.replay_path,
                  "replay backend: recorded intensity trace");
}

void add_out_options(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--out", cfg.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_option("--format", cfg.format, "table format for artifacts")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

std::size_t count_sources(const CliConfig& cfg) {
  std::size_t n = 0;
  if (cfg.inline_numbers) ++n;
  if (cfg.instance_path) ++n;
  if (cfg.gen_n) ++n;
  return n;
}

CliConfig parse_or_throw(const std::vector<std::string>& args) {
  CliConfig cfg;
  std::string backend_name = "ideal";
  std::vector<int> spins_raw;

  CLI::App app{"single-pixel Ising machine: evolutionary optimizer over "
               "simulated bucket-detector measurements"};
  app.name("evospi");
  app.require_subcommand(1);

  auto* partition =
      app.add_subcommand("partition", "solve a number partition instance");
  add_instance_options(partition, cfg, true, true);
  add_ga_options(partition, cfg);
  add_backend_options(partition, cfg, backend_name);
  add_out_options(partition, cfg);
  partition->add_flag("--export-images", cfg.export_images,
                      "also write weights.pgm and best_pattern.pbm");

  auto* maxcut = app.add_subcommand("maxcut", "solve a max-cut instance");
  add_instance_options(maxcut, cfg, false, true);
  add_ga_options(maxcut, cfg);
  add_backend_options(maxcut, cfg, backend_name);
  add_out_options(maxcut, cfg);
  maxcut->add_flag("--export-images", cfg.export_images,
                   "also write weights.pgm and best_pattern.pbm");

  auto* sweep = app.add_subcommand(
      "sweep", "problem-size scaling study on partition instances");
  sweep->add_option("--n-from", cfg.n_from, "smallest instance size")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  sweep->add_option("--n-to", cfg.n_to, "largest instance size")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  sweep->add_option("--n-step", cfg.n_step, "size increment")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--trials", cfg.trials, "trials per size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--cap", cfg.cap, "iteration cap per trial")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--instances", cfg.sweep_instances,
                    "auto: random with exhaustive targets up to n=26, "
                    "balanced beyond; perfect: always balanced")
      ->check(CLI::IsMember({"auto", "perfect"}))
      ->capture_default_str();
  sweep->add_option("--k", cfg.sweep_k, "population size")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  sweep->add_option("--elites", cfg.sweep_elites,
                    "elites preserved per generation (default 1)");
  sweep->add_option("--mutation-rate", cfg.mutation_rate,
                    "per-spin mutation probability (default 2/n)")
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  sweep->add_option("--threads", cfg.threads, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_out_options(sweep, cfg);

  auto* noise = app.add_subcommand(
      "noise", "success rate versus measurement noise level");
  add_instance_options(noise, cfg, true, true);
  noise->add_option("--sigmas", cfg.sigmas,
                    "comma separated noise levels, 0 means ideal")
      ->delimiter(',')
      ->required();
  noise->add_option("--trials", cfg.noise_trials, "seeds per noise level")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  noise->add_option("--bits", cfg.backend.bits, "quantization bits, 0 disables")
      ->check(CLI::Range(0, 16))
      ->capture_default_str();
  noise->add_option("--offset", cfg.backend.offset, "dark offset")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_ga_options(noise, cfg);
  noise->add_option("--threads", cfg.threads, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_out_options(noise, cfg);

  auto* oracle =
      app.add_subcommand("oracle", "exhaustive optimum for a small instance");
  add_instance_options(oracle, cfg, true, true);
  oracle->add_option("--gen-kind", cfg.sweep_instances,
                     "with --gen-n: partition or maxcut")
      ->check(CLI::IsMember({"partition", "maxcut"}));

  auto* exp = app.add_subcommand(
      "export-patterns", "write the illumination pattern for a spin state");
  exp->add_option("--spins", spins_raw, "comma separated +1/-1 state")
      ->delimiter(',')
      ->required();
  add_instance_options(exp, cfg, true, false);
  add_out_options(exp, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (partition->parsed()) cfg.command = Command::Partition;
  if (maxcut->parsed()) cfg.command = Command::MaxCut;
  if (sweep->parsed()) cfg.command = Command::Sweep;
  if (noise->parsed()) cfg.command = Command::Noise;
  if (oracle->parsed()) cfg.command = Command::Oracle;
  if (exp->parsed()) cfg.command = Command::ExportPatterns;

  if (!spins_raw.empty()) cfg.spins = spins_raw;

  if (backend_name == "noisy") cfg.backend.kind = BackendKind::Noisy;
  if (backend_name == "replay") cfg.backend.kind = BackendKind::Replay;
  if (backend_name == "ideal" && !cfg.backend.replay_path.empty())
    cfg.backend.kind = BackendKind::Replay;

  CLI::App* active = app.get_subcommands().front();
  auto passed = [&](const std::string& flag) {
    const CLI::Option* opt = active->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };

  switch (cfg.command) {
    case Command::Partition:
    case Command::MaxCut:
    case Command::Noise:
    case Command::Oracle:
      if (count_sources(cfg) != 1)
        throw UsageError(
            "exactly one of --numbers, --instance or --gen-n is required");
      break;
    case Command::ExportPatterns:
      if (count_sources(cfg) > 1)
        throw UsageError("--numbers, --instance and --gen-n are exclusive");
      break;
    case Command::Sweep:
      break;
  }

  if (cfg.command == Command::Partition || cfg.command == Command::MaxCut) {
    if (cfg.backend.kind == BackendKind::Replay &&
        cfg.backend.replay_path.empty())
      throw UsageError("--backend replay requires --replay <trace file>");
    if (cfg.backend.kind != BackendKind::Noisy) {
      for (const char* flag : {"--sigma", "--bits", "--offset"})
        if (passed(flag))
          throw UsageError(std::string(flag) +
                           " only applies to --backend noisy");
    }
    if (cfg.backend.kind != BackendKind::Replay && passed("--replay"))
      throw UsageError("--replay only applies to --backend replay");
  }

  if (cfg.elites && (*cfg.elites < 1 || *cfg.elites >= cfg.k))
    throw UsageError("--elites must satisfy 1 <= elites < k");
  if (cfg.sweep_elites &&
      (*cfg.sweep_elites < 1 || *cfg.sweep_elites >= cfg.sweep_k))
    throw UsageError("--elites must satisfy 1 <= elites < k");

  if (cfg.command == Command::Sweep && cfg.n_from > cfg.n_to)
    throw UsageError("--n-from must not exceed --n-to");

  if (cfg.command == Command::Noise) {
    if (cfg.sigmas.empty()) throw UsageError("--sigmas must not be empty");
    for (double s : cfg.sigmas)
      if (!(s >= 0.0)) throw UsageError("--sigmas entries must be >= 0");
  }

  if (cfg.spins) {
    if (cfg.spins->size() < 2)
      throw UsageError("--spins needs at least two entries");
    for (int v : *cfg.spins)
      if (v != 1 && v != -1)
        throw UsageError("--spins entries must be +1 or -1");
  }

  if (cfg.inline_numbers) {
    if (cfg.inline_numbers->size() < 2)
      throw UsageError("--numbers needs at least two entries");
    for (auto v : *cfg.inline_numbers)
      if (v < 1) throw UsageError("--numbers entries must be positive");
  }

  return cfg;
}

// ---------------------------------------------------------------------------
// instance resolution

ProblemInstance resolve_instance(const CliConfig& cfg) {
  if (cfg.instance_path) return load_instance(*cfg.instance_path);
  if (cfg.inline_numbers) return ProblemInstance{
      NumberPartitionInstance(*cfg.inline_numbers)};
  if (cfg.gen_n) {
    if (cfg.command == Command::MaxCut ||
        (cfg.command == Command::Oracle && cfg.sweep_instances == "maxcut"))
      return ProblemInstance{random_max_cut_instance(*cfg.gen_n, cfg.gen_seed)};
    return ProblemInstance{random_partition_instance(*cfg.gen_n, cfg.gen_seed)};
  }
  throw UsageError("no instance source given");
}

GaConfig make_ga(const CliConfig& cfg) {
  GaConfig ga;
  ga.population_k = cfg.k;
  ga.elites_j = cfg.elites.value_or(std::max<std::size_t>(1, cfg.k / 3));
  ga.mutation_rate = cfg.mutation_rate.value_or(0.1);
  ga.max_iterations = cfg.max_iters;
  ga.master_seed = cfg.seed;
  return ga;
}

std::unique_ptr<MeasurementBackend> make_backend(const CliConfig& cfg,
                                                 const WeightImage& image) {
  switch (cfg.backend.kind) {
    case BackendKind::Noisy: {
      NoiseModel model;
      model.gaussian_sigma = cfg.backend.sigma;
      model.quantization_bits = cfg.backend.bits;
      model.dark_offset = cfg.backend.offset;
      return std::make_unique<NoisyBackend>(image, model,
                                            derive_seed(cfg.seed, 3));
    }
    case BackendKind::Replay:
      return replay_load(cfg.backend.replay_path);
    case BackendKind::Ideal:
      break;
  }
  return std::make_unique<IdealBackend>(image);
}

// ---------------------------------------------------------------------------
// per-problem glue

const char* problem_name(const NumberPartitionInstance&) { return "partition"; }
const char* problem_name(const MaxCutInstance&) { return "maxcut"; }

double oracle_optimum(const NumberPartitionInstance& inst) {
  return static_cast<double>(brute_force(inst).error);
}
double oracle_optimum(const MaxCutInstance& inst) {
  return brute_force(inst).cut_value;
}

json groups_json(const NumberPartitionInstance& inst, const SpinVector& s) {
  auto sol = decode_partition(s, inst);
  return json{{"a", sol.group_a}, {"b", sol.group_b}};
}
json groups_json(const MaxCutInstance& inst, const SpinVector& s) {
  auto sol = decode_cut(s, inst);
  return json{{"a", sol.group_a}, {"b", sol.group_b}};
}

// ---------------------------------------------------------------------------
// artifact writers

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             ": " + ec.message());
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  return out;
}

void write_curve_json(const std::filesystem::path& path,
                      const std::vector<bench::CurvePoint>& points) {
  json rows = json::array();
  for (const auto& p : points)
    rows.push_back({{"iteration", p.iteration},
                    {"best_objective", p.best_objective},
                    {"best_intensity", p.best_intensity}});
  auto out = open_out(path);
  out << rows.dump(2) << '\n';
}

void write_states(const std::filesystem::path& path,
                  const std::vector<SpinVector>& states) {
  auto out = open_out(path);
  for (const auto& s : states) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out << ' ';
      out << (s[i] > 0 ? "+1" : "-1");
    }
    out << '\n';
  }
}

std::string curve_filename(const CliConfig& cfg) {
  return cfg.format == "json" ? "curve.json" : "curve.csv";
}

void write_curve(const CliConfig& cfg,
                 const std::vector<bench::CurvePoint>& points) {
  const auto path = cfg.out_dir / curve_filename(cfg);
  if (cfg.format == "json") {
    write_curve_json(path, points);
  } else {
    bench::write_curve_csv(points, path);
    bench::write_curve_gnuplot(path, cfg.out_dir / "curve.gp");
  }
}

json backend_json(const CliConfig& cfg) {
  switch (cfg.backend.kind) {
    case BackendKind::Noisy:
      return json{{"type", "noisy"},
                  {"sigma", cfg.backend.sigma},
                  {"bits", cfg.backend.bits},
                  {"offset", cfg.backend.offset}};
    case BackendKind::Replay:
      return json{{"type", "replay"}, {"trace", cfg.backend.replay_path}};
    case BackendKind::Ideal:
      break;
  }
  return json{{"type", "ideal"}};
}

// ---------------------------------------------------------------------------
// solve (partition / maxcut)

template <class Inst>
int solve_one(const CliConfig& cfg, const Inst& inst) {
  const std::size_t n = inst.size();
  GaConfig ga = make_ga(cfg);

  std::optional<double> oracle;
  if (n <= kBruteForceLimit) {
    oracle = oracle_optimum(inst);
    ga.target = oracle;
  }

  const WeightImage image = encode(inst);
  auto backend = make_backend(cfg, image);

  ensure_dir(cfg.out_dir);

  bench::ConvergenceResult conv;
  try {
    conv = bench::convergence_experiment(inst, ga, *backend);
  } catch (const RunAbortedError& e) {
    // Salvage the partial trajectory so the failed run can still be inspected.
    std::vector<bench::CurvePoint> points;
    std::vector<SpinVector> states;
    for (const auto& st : e.history()) {
      points.push_back(
          {st.iteration, st.decoded_quality.value_or(0.0), st.best_intensity});
      states.push_back(st.best_spins);
    }
    write_curve(cfg, points);
    write_states(cfg.out_dir / "states.txt", states);
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  write_curve(cfg, conv.points);
  write_states(cfg.out_dir / "states.txt", conv.best_states);

  if (cfg.export_images) {
    write_weights_pgm16(image, cfg.out_dir / "weights.pgm");
    write_pattern_pbm(pattern_from_spins(conv.run.best_spins),
                      cfg.out_dir / "best_pattern.pbm");
  }

  const double best_objective = conv.run.best_objective.value_or(0.0);

  ordered_json result;
  result["problem"] = problem_name(inst);
  result["n"] = n;
  result["config"] = ordered_json{
      {"population_k", ga.population_k},
      {"elites_j", ga.elites_j},
      {"mutation_rate", ga.mutation_rate},
      {"max_iterations", ga.max_iterations},
      {"backend", backend_json(cfg)},
  };
  result["seed"] = cfg.seed;
  result["history_path"] = curve_filename(cfg);
  std::vector<int> spins_out;
  for (std::size_t i = 0; i < conv.run.best_spins.size(); ++i)
    spins_out.push_back(conv.run.best_spins[i]);
  result["best"] = ordered_json{
      {"spins", spins_out},
      {"groups", groups_json(inst, conv.run.best_spins)},
      {"objective", best_objective},
  };
  if (conv.run.converged_at)
    result["converged_at"] = *conv.run.converged_at;
  else
    result["converged_at"] = nullptr;
  if (oracle)
    result["oracle"] = ordered_json{
        {"value", *oracle},
        {"matched", bench::objective_matches(best_objective, *oracle)},
    };

  {
    auto out = open_out(cfg.out_dir / "result.json");
    out << result.dump(2) << '\n';
  }

  std::cout << "n=" << n << " best objective " << fmt_double(best_objective);
  if (conv.run.converged_at)
    std::cout << " (target reached at iteration " << *conv.run.converged_at
              << ")";
  std::cout << '\n';

  if (ga.target && !conv.run.converged_at) return 2;
  return 0;
}

int run_solve(const CliConfig& cfg) {
  const ProblemInstance inst = resolve_instance(cfg);
  if (cfg.command == Command::Partition &&
      !std::holds_alternative<NumberPartitionInstance>(inst))
    throw UsageError("--instance is not a partition instance");
  if (cfg.command == Command::MaxCut &&
      !std::holds_alternative<MaxCutInstance>(inst))
    throw UsageError("--instance is not a maxcut instance");
  return std::visit([&](const auto& typed) { return solve_one(cfg, typed); },
                    inst);
}

// ---------------------------------------------------------------------------
// sweep

int run_sweep(const CliConfig& cfg) {
  bench::SweepConfig sc;
  sc.n_from = cfg.n_from;
  sc.n_to = cfg.n_to;
  sc.n_step = cfg.n_step;
  sc.trials_per_n = cfg.trials;
  sc.population_k = cfg.sweep_k;
  sc.elites_j = cfg.sweep_elites.value_or(1);
  sc.mutation_rate = cfg.mutation_rate;
  sc.iteration_cap = cfg.cap;
  sc.master_seed = cfg.seed;
  sc.instances = cfg.sweep_instances == "perfect"
                     ? bench::SweepInstanceKind::Perfect
                     : bench::SweepInstanceKind::Auto;
  sc.threads = cfg.threads;

  const auto rows = bench::scaling_sweep(sc);

  ensure_dir(cfg.out_dir);
  if (cfg.format == "json") {
    json out_rows = json::array();
    for (const auto& r : rows) {
      json row{{"n", r.n}, {"seed", r.seed}, {"wall_time_s", r.wall_time_s}};
      if (r.iterations_to_solve)
        row["iterations_to_solve"] = *r.iterations_to_solve;
      else
        row["iterations_to_solve"] = nullptr;
      out_rows.push_back(std::move(row));
    }
    auto out = open_out(cfg.out_dir / "sweep.json");
    out << out_rows.dump(2) << '\n';
  } else {
    const auto csv = cfg.out_dir / "sweep.csv";
    bench::write_sweep_csv(rows, csv);
    bench::write_sweep_gnuplot(csv, cfg.out_dir / "sweep.gp");
  }

  std::size_t solved = 0;
  for (const auto& r : rows) solved += r.iterations_to_solve.has_value();
  std::cout << "sweep: " << solved << "/" << rows.size() << " trials solved\n";
  return 0;
}

// ---------------------------------------------------------------------------
// noise

int run_noise(const CliConfig& cfg) {
  const ProblemInstance inst = resolve_instance(cfg);

  bench::NoiseConfig nc;
  nc.sigmas = cfg.sigmas;
  nc.trials = cfg.noise_trials;
  nc.ga = make_ga(cfg);
  nc.model.quantization_bits = cfg.backend.bits;
  nc.model.dark_offset = cfg.backend.offset;
  nc.threads = cfg.threads;

  const auto rows = std::visit(
      [&](const auto& typed) { return bench::noise_robustness(typed, nc); },
      inst);

  ensure_dir(cfg.out_dir);
  if (cfg.format == "json") {
    json out_rows = json::array();
    for (const auto& r : rows) {
      json row{{"sigma", r.sigma}, {"success_rate", r.success_rate}};
      if (std::isnan(r.mean_iterations))
        row["mean_iterations"] = nullptr;
      else
        row["mean_iterations"] = r.mean_iterations;
      out_rows.push_back(std::move(row));
    }
    auto out = open_out(cfg.out_dir / "noise.json");
    out << out_rows.dump(2) << '\n';
  } else {
    const auto csv = cfg.out_dir / "noise.csv";
    bench::write_noise_csv(rows, csv);
    bench::write_noise_gnuplot(csv, cfg.out_dir / "noise.gp");
  }

  for (const auto& r : rows)
    std::cout << "sigma " << fmt_double(r.sigma) << ": success "
              << fmt_double(r.success_rate) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// oracle

int run_oracle(const CliConfig& cfg) {
  const ProblemInstance inst = resolve_instance(cfg);
  std::visit(
      [&](const auto& typed) {
        using T = std::decay_t<decltype(typed)>;
        std::cout << "problem: " << problem_name(typed) << '\n'
                  << "n: " << typed.size() << '\n';
        if constexpr (std::is_same_v<T, NumberPartitionInstance>) {
          const auto opt = brute_force(typed);
          const auto sol = decode_partition(opt.spins, typed);
          std::cout << "optimum error: " << opt.error << '\n';
          std::cout << "group_a:";
          for (auto v : sol.group_a) std::cout << ' ' << v;
          std::cout << "\ngroup_b:";
          for (auto v : sol.group_b) std::cout << ' ' << v;
          std::cout << '\n';
        } else {
          const auto opt = brute_force(typed);
          const auto sol = decode_cut(opt.spins, typed);
          std::cout << "optimum cut: " << fmt_double(opt.cut_value) << '\n';
          std::cout << "group_a:";
          for (auto v : sol.group_a) std::cout << ' ' << v;
          std::cout << "\ngroup_b:";
          for (auto v : sol.group_b) std::cout << ' ' << v;
          std::cout << '\n';
        }
      },
      inst);
  return 0;
}

// ---------------------------------------------------------------------------
// export-patterns

int run_export(const CliConfig& cfg) {
  std::vector<std::int8_t> states(cfg.spins->begin(), cfg.spins->end());
  SpinVector s{std::move(states)};
  ensure_dir(cfg.out_dir);

  const auto pattern_path = cfg.out_dir / "pattern.pbm";
  write_pattern_pbm(pattern_from_spins(s), pattern_path);
  std::cout << pattern_path.string() << '\n';

  if (count_sources(cfg) == 1) {
    const ProblemInstance inst = resolve_instance(cfg);
    const WeightImage image =
        std::visit([](const auto& typed) { return encode(typed); }, inst);
    if (image.n() != s.size())
      throw UsageError("--spins length does not match the instance size");
    const auto weights_path = cfg.out_dir / "weights.pgm";
    write_weights_pgm16(image, weights_path);
    std::cout << weights_path.string() << '\n';
  }
  return 0;
}

}  // namespace

CliConfig parse_args(const std::vector<std::string>& args) {
  return parse_or_throw(args);
}

int execute(const CliConfig& cfg) {
  switch (cfg.command) {
    case Command::Partition:
    case Command::MaxCut:
      return run_solve(cfg);
    case Command::Sweep:
      return run_sweep(cfg);
    case Command::Noise:
      return run_noise(cfg);
    case Command::Oracle:
      return run_oracle(cfg);
    case Command::ExportPatterns:
      return run_export(cfg);
  }
  return 1;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const CliConfig cfg = parse_args(args);
    return execute(cfg);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return 0;
  } catch (const UsageError& u) {
    std::cerr << "usage error: " << u.what() << '\n'
              << "run 'evospi --help' for the option list\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace evospi::cli
