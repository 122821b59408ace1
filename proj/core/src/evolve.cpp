#include "evospi/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace evospi {

namespace {

constexpr int kInitRetries = 32;

// comparison slack for "reached the target": real-weight objectives of equal
// cuts can differ in the last ulps depending on summation order
bool target_reached(double quality, double target, bool maximize) {
  const double eps = 1e-9 * std::max(1.0, std::abs(target));
  return maximize ? quality >= target - eps : quality <= target + eps;
}

}  // namespace

void GaConfig::validate() const {
  if (population_k < 2) {
    throw std::invalid_argument("GaConfig: population_k must be >= 2, got " +
                                std::to_string(population_k));
  }
  if (elites_j < 1 || elites_j >= population_k) {
    throw std::invalid_argument("GaConfig: elites_j must satisfy 1 <= J < K, got J = " +
                                std::to_string(elites_j) + " with K = " +
                                std::to_string(population_k));
  }
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw std::invalid_argument("GaConfig: mutation_rate must be in [0, 1]");
  }
  if (max_iterations < 1) {
    throw std::invalid_argument("GaConfig: max_iterations must be >= 1");
  }
}

std::vector<SpinVector> init_population(std::size_t n, const GaConfig& config) {
  if (n < 2) {
    throw std::invalid_argument("init_population needs n >= 2, got " + std::to_string(n));
  }
  config.validate();
  std::vector<SpinVector> population;
  population.reserve(config.population_k);
  for (std::size_t k = 0; k < config.population_k; ++k) {
    RngStream rng(config.master_seed, 0, k, StreamPurpose::PopulationInit);
    SpinVector candidate = SpinVector::random(n, rng);
    for (int retry = 0; retry < kInitRetries; ++retry) {
      const bool duplicate =
          std::find(population.begin(), population.end(), candidate) != population.end();
      if (!duplicate) break;
      candidate = SpinVector::random(n, rng);
    }
    population.push_back(std::move(candidate));
  }
  return population;
}

std::vector<SpinVector> select_elites(const std::vector<SpinVector>& population,
                                      const std::vector<double>& intensities,
                                      std::size_t j) {
  if (population.size() != intensities.size()) {
    throw std::invalid_argument("select_elites: " + std::to_string(population.size()) +
                                " individuals but " + std::to_string(intensities.size()) +
                                " intensities");
  }
  if (j >= population.size()) {
    throw std::invalid_argument("select_elites: j must be < population size");
  }
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return intensities[a] > intensities[b];  // stable keeps the lower index on ties
  });
  std::vector<SpinVector> elites;
  elites.reserve(j);
  for (std::size_t r = 0; r < j; ++r) elites.push_back(population[order[r]]);
  return elites;
}

SpinVector crossover(const SpinVector& a, const SpinVector& b, RngStream& rng) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("crossover: parent lengths " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()) + " differ");
  }
  std::vector<std::int8_t> child(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) child[i] = rng.coin() ? a[i] : b[i];
  return SpinVector(std::move(child));
}

SpinVector mutate(const SpinVector& s, double rate, RngStream& rng) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("mutate: rate must be in [0, 1]");
  }
  SpinVector out = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (rng.uniform01() < rate) out.flip(i);
  }
  return out;
}

StepResult step(const std::vector<SpinVector>& population, MeasurementBackend& backend,
                const GaConfig& config, std::size_t iteration,
                const Objective* objective) {
  config.validate();
  if (population.size() != config.population_k) {
    throw std::invalid_argument("step: population size " + std::to_string(population.size()) +
                                " does not match config.population_k " +
                                std::to_string(config.population_k));
  }

  std::vector<Pattern> patterns;
  patterns.reserve(population.size());
  for (const auto& s : population) patterns.push_back(pattern_from_spins(s));

  StepResult result;
  result.intensities = backend.measure_batch(patterns, iteration);

  std::size_t best = 0;
  double mean = 0.0;
  for (std::size_t k = 0; k < result.intensities.size(); ++k) {
    mean += result.intensities[k];
    if (result.intensities[k] > result.intensities[best]) best = k;
  }
  mean /= static_cast<double>(result.intensities.size());

  result.stats.iteration = iteration;
  result.stats.best_intensity = result.intensities[best];
  result.stats.best_spins = population[best];
  result.stats.population_mean_intensity = mean;
  if (objective) {
    result.qualities.reserve(population.size());
    for (const auto& s : population) result.qualities.push_back(objective->value(s));
    result.stats.decoded_quality = result.qualities[best];
  }

  const std::size_t j = config.elites_j;
  std::vector<SpinVector> elites = select_elites(population, result.intensities, j);
  result.next_population = elites;
  result.next_population.reserve(config.population_k);
  for (std::size_t slot = j; slot < config.population_k; ++slot) {
    RngStream pick(config.master_seed, iteration, slot, StreamPurpose::ParentSelect);
    std::size_t pa = pick.uniform_below(j);
    std::size_t pb = pa;
    if (j > 1) {  // two distinct parents; with a single elite both are it
      pb = pick.uniform_below(j - 1);
      if (pb >= pa) ++pb;
    }
    RngStream mask(config.master_seed, iteration, slot, StreamPurpose::CrossoverMask);
    SpinVector child = crossover(elites[pa], elites[pb], mask);
    RngStream mut(config.master_seed, iteration, slot, StreamPurpose::Mutation);
    result.next_population.push_back(mutate(child, config.mutation_rate, mut));
  }
  return result;
}

RunResult run(MeasurementBackend& backend, std::size_t n, const GaConfig& config,
              const Objective* objective) {
  config.validate();
  if (config.target && !objective) {
    throw std::invalid_argument("run: config.target requires an objective");
  }

  std::vector<SpinVector> population = init_population(n, config);
  RunResult result;
  bool have_best = false;

  for (std::size_t t = 0; t < config.max_iterations; ++t) {
    StepResult sr;
    try {
      sr = step(population, backend, config, t, objective);
    } catch (const std::exception& e) {
      throw RunAbortedError(std::string("run aborted at iteration ") + std::to_string(t) +
                                ": " + e.what(),
                            std::move(result.history));
    }

    result.history.push_back(sr.stats);

    // The answer is the state behind the largest recorded detector value; a
    // noisy backend may crown a worse state, which re-scoring below surfaces
    // honestly instead of silently picking the best decoded visit.
    for (std::size_t k = 0; k < population.size(); ++k) {
      if (!have_best || sr.intensities[k] > result.best_intensity) {
        result.best_spins = population[k];
        result.best_intensity = sr.intensities[k];
        have_best = true;
      }
    }

    if (config.target) {
      const bool reached = std::any_of(
          sr.qualities.begin(), sr.qualities.end(), [&](double q) {
            return target_reached(q, *config.target, objective->maximize);
          });
      if (reached) {
        result.converged_at = t;
        break;
      }
    }

    population = std::move(sr.next_population);
  }
  if (objective && have_best) result.best_objective = objective->value(result.best_spins);
  return result;
}

}  // namespace evospi
