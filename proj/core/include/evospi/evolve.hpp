#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evospi/core.hpp"
#include "evospi/rng.hpp"
#include "evospi/spi.hpp"

namespace evospi {

// Evolutionary-loop hyperparameters. K patterns are measured per iteration;
// the J best by intensity survive unchanged, the rest are replaced by mutated
// crossover children of the survivors.
struct GaConfig {
  std::size_t population_k = 6;
  std::size_t elites_j = 2;    // default max(1, K/3)
  double mutation_rate = 0.1;  // per-element flip probability, children only
  std::size_t max_iterations = 20;
  std::optional<double> target;  // known-optimal objective; reaching it stops the run
  std::uint64_t master_seed = 0;

  void validate() const;  // throws std::invalid_argument on out-of-range fields
};

// Exact decoded objective used for early stopping and final re-scoring.
// Partition minimizes the error; max cut maximizes the cut value.
struct Objective {
  std::function<double(const SpinVector&)> value;
  bool maximize = false;
};

struct IterationStats {
  std::size_t iteration = 0;
  double best_intensity = 0.0;
  SpinVector best_spins;  // intensity-best individual of this iteration
  std::optional<double> decoded_quality;  // exact objective of best_spins
  double population_mean_intensity = 0.0;
};

struct RunResult {
  std::vector<IterationStats> history;
  // The individual behind the largest measured intensity of the whole run
  // (earliest on ties). best_objective re-scores it with the exact objective
  // when one was given; a noisy backend can therefore report a suboptimal
  // answer even after visiting the optimum.
  SpinVector best_spins;
  double best_intensity = 0.0;
  std::optional<double> best_objective;
  std::optional<std::size_t> converged_at;  // iteration where target was first met
};

// Thrown when the backend fails mid-run; carries the iterations completed
// before the failure.
class RunAbortedError : public std::runtime_error {
 public:
  RunAbortedError(const std::string& what, std::vector<IterationStats> history)
      : std::runtime_error(what), history_(std::move(history)) {}

  const std::vector<IterationStats>& history() const { return history_; }

 private:
  std::vector<IterationStats> history_;
};

// K random individuals from the seeded init streams. Duplicates are redrawn
// a bounded number of times and then accepted (unavoidable once K > 2^n).
std::vector<SpinVector> init_population(std::size_t n, const GaConfig& config);

// The j individuals with the largest intensities, in rank order, ties broken
// by the lower population index. The survivors are returned unmodified.
std::vector<SpinVector> select_elites(const std::vector<SpinVector>& population,
                                      const std::vector<double>& intensities,
                                      std::size_t j);

// Uniform-mask crossover: each position comes from parent a or b by a fair
// coin (true picks a).
SpinVector crossover(const SpinVector& a, const SpinVector& b, RngStream& rng);

// Each element flipped independently with probability rate.
SpinVector mutate(const SpinVector& s, double rate, RngStream& rng);

struct StepResult {
  std::vector<SpinVector> next_population;
  IterationStats stats;
  std::vector<double> intensities;  // measured for the submitted population
  std::vector<double> qualities;    // exact objective per individual; empty without one
};

// One generation: measure the population, record stats, keep the elites,
// fill the remaining slots with mutated children of two distinct elite
// parents (with J = 1 both parents are the single elite). Elites are never
// mutated. Child randomness is keyed by (iteration, slot index), so results
// do not depend on evaluation order.
StepResult step(const std::vector<SpinVector>& population, MeasurementBackend& backend,
                const GaConfig& config, std::size_t iteration,
                const Objective* objective = nullptr);

// Full evolutionary run over a fresh population of n-spin individuals.
// Stops early when any evaluated individual reaches config.target (requires
// an objective). Backend failures raise RunAbortedError with the history
// gathered so far.
RunResult run(MeasurementBackend& backend, std::size_t n, const GaConfig& config,
              const Objective* objective = nullptr);

}  // namespace evospi
