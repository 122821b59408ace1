// Hot paths at small, medium, and large instance sizes. Each detector sample
// touches N*N pixels, so these set the budget for everything above them.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "evospi/core.hpp"
#include "evospi/evolve.hpp"
#include "evospi/problems.hpp"
#include "evospi/rng.hpp"
#include "evospi/spi.hpp"

namespace {

evospi::WeightImage make_image(std::size_t n) {
  return evospi::encode_number_partition(evospi::random_partition_instance(n, 7));
}

evospi::SpinVector make_spins(std::size_t n) {
  evospi::RngStream rng(5, 0, 0, evospi::StreamPurpose::PopulationInit);
  return evospi::SpinVector::random(n, rng);
}

void bm_hamiltonian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto img = make_image(n);
  const auto spins = make_spins(n);
  for (auto _ : state) benchmark::DoNotOptimize(evospi::hamiltonian(spins, img));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n * n));
}
BENCHMARK(bm_hamiltonian)->Arg(16)->Arg(64)->Arg(256);

void bm_ideal_intensity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto img = make_image(n);
  const auto spins = make_spins(n);
  for (auto _ : state) benchmark::DoNotOptimize(evospi::ideal_intensity(spins, img));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n * n));
}
BENCHMARK(bm_ideal_intensity)->Arg(16)->Arg(64)->Arg(256);

void bm_pattern_from_spins(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spins = make_spins(n);
  for (auto _ : state) {
    evospi::Pattern p = evospi::pattern_from_spins(spins);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(bm_pattern_from_spins)->Arg(16)->Arg(64)->Arg(256);

void bm_measure_batch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto img = make_image(n);
  evospi::IdealBackend backend(img);
  std::vector<evospi::Pattern> patterns;
  for (std::size_t k = 0; k < 12; ++k) {
    evospi::RngStream rng(9, 0, k, evospi::StreamPurpose::PopulationInit);
    patterns.push_back(evospi::pattern_from_spins(evospi::SpinVector::random(n, rng)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(backend.measure_batch(patterns, 0));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 12 *
                          static_cast<std::int64_t>(n * n));
}
BENCHMARK(bm_measure_batch)->Arg(16)->Arg(64)->Arg(256);

void bm_step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto img = make_image(n);
  evospi::IdealBackend backend(img);
  evospi::GaConfig ga;
  ga.population_k = 12;
  ga.elites_j = 4;
  ga.mutation_rate = 0.1;
  ga.master_seed = 3;
  auto population = evospi::init_population(n, ga);
  std::size_t iteration = 0;
  for (auto _ : state) {
    evospi::StepResult sr = evospi::step(population, backend, ga, iteration++);
    population = std::move(sr.next_population);
    benchmark::DoNotOptimize(population);
  }
}
BENCHMARK(bm_step)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
