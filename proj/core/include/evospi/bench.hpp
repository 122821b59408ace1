#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "evospi/evolve.hpp"
#include "evospi/problems.hpp"
#include "evospi/spi.hpp"

namespace evospi::bench {

// Objective equality with 1e-9 relative slack; exact for integer objectives.
bool objective_matches(double got, double want);

// Exact decoded objectives for the two benchmark problems.
Objective partition_objective(const NumberPartitionInstance& inst);
Objective cut_objective(const MaxCutInstance& inst);

struct CurvePoint {
  std::size_t iteration = 0;
  double best_objective = 0.0;  // partition error or cut value
  double best_intensity = 0.0;
};

struct ConvergenceResult {
  std::vector<CurvePoint> points;
  std::vector<SpinVector> best_states;  // per-iteration intensity-best state
  RunResult run;
};

// One run's per-iteration curve plus the optimal-state record.
ConvergenceResult convergence_experiment(const NumberPartitionInstance& inst,
                                         const GaConfig& config, MeasurementBackend& backend);
ConvergenceResult convergence_experiment(const MaxCutInstance& inst, const GaConfig& config,
                                         MeasurementBackend& backend);

struct SweepRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;  // trial seed; instance and GA streams derive from it
  std::optional<std::size_t> iterations_to_solve;  // empty = unsolved within the cap
  double wall_time_s = 0.0;
};

enum class SweepInstanceKind {
  Auto,     // random instances verified against the oracle for N <= 26,
            // perfect-partition instances beyond
  Perfect,  // perfect-partition instances at every N; success = error 0
};

struct SweepConfig {
  std::size_t n_from = 10;
  std::size_t n_to = 100;
  std::size_t n_step = 10;
  std::size_t trials_per_n = 20;
  std::size_t population_k = 12;
  std::size_t elites_j = 1;
  std::optional<double> mutation_rate;  // empty: 2/N per instance size
  std::size_t iteration_cap = 5000;
  std::uint64_t master_seed = 1;
  SweepInstanceKind instances = SweepInstanceKind::Auto;
  unsigned threads = 1;
};

// Iterations-to-solve across instance sizes, ideal backend. Rows come back in
// deterministic (n, trial) order regardless of the thread count; a trial that
// exhausts the cap is marked unsolved, never an error.
std::vector<SweepRow> scaling_sweep(const SweepConfig& config);

struct NoiseRow {
  double sigma = 0.0;
  double success_rate = 0.0;
  // Mean 1-based iteration of the winning measurement, over successful trials
  // only; NaN when none succeeded.
  double mean_iterations = 0.0;
};

struct NoiseConfig {
  std::vector<double> sigmas;
  std::size_t trials = 100;
  GaConfig ga;       // per-trial seeds derive from ga.master_seed
  NoiseModel model;  // sigma is overridden per row; a sigma-0 row runs noise-free
  unsigned threads = 1;
};

// Each trial runs the full iteration budget with no early stop; the answer is
// the state behind the largest recorded intensity, re-scored exactly. Success =
// that answer matches the brute-force optimum, so the instance must be within
// the oracle bound. Large sigmas therefore degrade toward the random-guess
// rate instead of rewarding lucky visits.
std::vector<NoiseRow> noise_robustness(const NumberPartitionInstance& inst,
                                       const NoiseConfig& config);
std::vector<NoiseRow> noise_robustness(const MaxCutInstance& inst, const NoiseConfig& config);

// CSV emission. Headers are fixed: curves "iteration,best_objective,best_intensity",
// sweeps "n,seed,iterations_to_solve,wall_time_s", noise "sigma,success_rate,mean_iterations".
void write_curve_csv(const std::vector<CurvePoint>& points, const std::filesystem::path& path);
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);
void write_noise_csv(const std::vector<NoiseRow>& rows, const std::filesystem::path& path);

// Companion gnuplot scripts for a quick look at each CSV.
void write_curve_gnuplot(const std::filesystem::path& csv_path,
                         const std::filesystem::path& gp_path);
void write_sweep_gnuplot(const std::filesystem::path& csv_path,
                         const std::filesystem::path& gp_path);
void write_noise_gnuplot(const std::filesystem::path& csv_path,
                         const std::filesystem::path& gp_path);

}  // namespace evospi::bench
