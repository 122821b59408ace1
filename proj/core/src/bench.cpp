#include "evospi/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <thread>

namespace evospi::bench {

bool objective_matches(double got, double want) {
  return std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want));
}

namespace {

// seed-derivation salts for the independent streams hanging off one trial
constexpr std::uint64_t kSaltInstance = 1;
constexpr std::uint64_t kSaltGa = 2;
constexpr std::uint64_t kSaltNoise = 3;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// fn(i) for i in [0, count), spread over `threads` workers; results must be
// written into per-index slots so the schedule cannot affect the output
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(threads, count));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ConvergenceResult convergence_impl(const WeightImage& image, const Objective& objective,
                                   const GaConfig& config, MeasurementBackend& backend) {
  ConvergenceResult result;
  result.run = run(backend, image.n(), config, &objective);
  result.points.reserve(result.run.history.size());
  result.best_states.reserve(result.run.history.size());
  for (const auto& stats : result.run.history) {
    result.points.push_back({stats.iteration, stats.decoded_quality.value_or(0.0),
                             stats.best_intensity});
    result.best_states.push_back(stats.best_spins);
  }
  return result;
}

std::ofstream open_or_throw(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

Objective partition_objective(const NumberPartitionInstance& inst) {
  return {[inst](const SpinVector& s) {
            return static_cast<double>(decode_partition(s, inst).error);
          },
          /*maximize=*/false};
}

Objective cut_objective(const MaxCutInstance& inst) {
  return {[inst](const SpinVector& s) { return cut_value(s, inst); },
          /*maximize=*/true};
}

ConvergenceResult convergence_experiment(const NumberPartitionInstance& inst,
                                         const GaConfig& config, MeasurementBackend& backend) {
  return convergence_impl(encode_number_partition(inst), partition_objective(inst), config,
                          backend);
}

ConvergenceResult convergence_experiment(const MaxCutInstance& inst, const GaConfig& config,
                                         MeasurementBackend& backend) {
  return convergence_impl(encode_max_cut(inst), cut_objective(inst), config, backend);
}

std::vector<SweepRow> scaling_sweep(const SweepConfig& config) {
  if (config.n_from < 2) throw std::invalid_argument("scaling_sweep: n_from must be >= 2");
  if (config.n_step < 1) throw std::invalid_argument("scaling_sweep: n_step must be >= 1");
  if (config.trials_per_n < 1) {
    throw std::invalid_argument("scaling_sweep: trials_per_n must be >= 1");
  }
  if (config.iteration_cap < 1) {
    throw std::invalid_argument("scaling_sweep: iteration_cap must be >= 1");
  }

  std::vector<std::size_t> sizes;
  for (std::size_t n = config.n_from; n <= config.n_to; n += config.n_step) sizes.push_back(n);

  std::vector<SweepRow> rows(sizes.size() * config.trials_per_n);
  parallel_for(rows.size(), config.threads, [&](std::size_t job) {
    const std::size_t n = sizes[job / config.trials_per_n];
    const std::size_t trial = job % config.trials_per_n;
    const std::uint64_t trial_seed = derive_seed(config.master_seed, n, trial);

    const bool use_oracle =
        config.instances == SweepInstanceKind::Auto && n <= kBruteForceLimit;
    NumberPartitionInstance inst =
        use_oracle ? random_partition_instance(n, derive_seed(trial_seed, kSaltInstance))
                   : perfect_partition_instance(n, derive_seed(trial_seed, kSaltInstance));
    const double target =
        use_oracle ? static_cast<double>(brute_force(inst).error) : 0.0;

    GaConfig ga;
    ga.population_k = config.population_k;
    ga.elites_j = config.elites_j;
    ga.mutation_rate =
        config.mutation_rate.value_or(2.0 / static_cast<double>(n));
    ga.max_iterations = config.iteration_cap;
    ga.target = target;
    ga.master_seed = derive_seed(trial_seed, kSaltGa);

    IdealBackend backend(encode_number_partition(inst));
    Objective objective = partition_objective(inst);

    const auto t0 = std::chrono::steady_clock::now();
    RunResult run_result = run(backend, n, ga, &objective);
    const auto t1 = std::chrono::steady_clock::now();

    SweepRow row;
    row.n = n;
    row.seed = trial_seed;
    row.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    const bool solved = run_result.converged_at.has_value() && run_result.best_objective &&
                        objective_matches(*run_result.best_objective, target);
    if (solved) row.iterations_to_solve = *run_result.converged_at + 1;
    rows[job] = row;
  });
  return rows;
}

namespace {

std::vector<NoiseRow> noise_impl(const WeightImage& image, const Objective& objective,
                                 double target, const NoiseConfig& config) {
  config.ga.validate();
  config.model.validate();
  if (config.trials < 1) throw std::invalid_argument("noise_robustness: trials must be >= 1");
  for (double s : config.sigmas) {
    if (!(s >= 0.0)) throw std::invalid_argument("noise_robustness: sigmas must be >= 0");
  }

  std::vector<NoiseRow> rows(config.sigmas.size());
  std::vector<std::uint8_t> success(config.sigmas.size() * config.trials, 0);
  std::vector<std::size_t> iters(config.sigmas.size() * config.trials, 0);

  parallel_for(success.size(), config.threads, [&](std::size_t job) {
    const std::size_t row = job / config.trials;
    const std::size_t trial = job % config.trials;
    const double sigma = config.sigmas[row];
    const std::uint64_t trial_seed = derive_seed(config.ga.master_seed, row, trial);

    GaConfig ga = config.ga;
    ga.master_seed = derive_seed(trial_seed, kSaltGa);
    ga.target.reset();  // no early stop: the answer is read off the full record

    std::unique_ptr<MeasurementBackend> backend;
    if (sigma > 0.0) {
      NoiseModel model = config.model;
      model.gaussian_sigma = sigma;
      backend = std::make_unique<NoisyBackend>(image, model,
                                               derive_seed(trial_seed, kSaltNoise));
    } else {
      backend = std::make_unique<IdealBackend>(image);
    }

    RunResult result = run(*backend, image.n(), ga, &objective);
    if (result.best_objective && objective_matches(*result.best_objective, target)) {
      success[job] = 1;
      // First iteration whose recorded maximum is the run maximum: how long the
      // machine had to run before the winning measurement happened.
      std::size_t argmax = 0;
      for (std::size_t t = 1; t < result.history.size(); ++t) {
        if (result.history[t].best_intensity > result.history[argmax].best_intensity) {
          argmax = t;
        }
      }
      iters[job] = argmax + 1;
    }
  });

  for (std::size_t row = 0; row < config.sigmas.size(); ++row) {
    std::size_t wins = 0;
    std::size_t iter_sum = 0;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      const std::size_t job = row * config.trials + trial;
      if (success[job]) {
        ++wins;
        iter_sum += iters[job];
      }
    }
    rows[row].sigma = config.sigmas[row];
    rows[row].success_rate =
        static_cast<double>(wins) / static_cast<double>(config.trials);
    rows[row].mean_iterations =
        wins ? static_cast<double>(iter_sum) / static_cast<double>(wins)
             : std::numeric_limits<double>::quiet_NaN();
  }
  return rows;
}

}  // namespace

std::vector<NoiseRow> noise_robustness(const NumberPartitionInstance& inst,
                                       const NoiseConfig& config) {
  const double target = static_cast<double>(brute_force(inst).error);
  return noise_impl(encode_number_partition(inst), partition_objective(inst), target, config);
}

std::vector<NoiseRow> noise_robustness(const MaxCutInstance& inst, const NoiseConfig& config) {
  const double target = brute_force(inst).cut_value;
  return noise_impl(encode_max_cut(inst), cut_objective(inst), target, config);
}

void write_curve_csv(const std::vector<CurvePoint>& points, const std::filesystem::path& path) {
  auto out = open_or_throw(path);
  out << "iteration,best_objective,best_intensity\n";
  for (const auto& p : points) {
    out << p.iteration << "," << fmt_double(p.best_objective) << ","
        << fmt_double(p.best_intensity) << "\n";
  }
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  auto out = open_or_throw(path);
  out << "n,seed,iterations_to_solve,wall_time_s\n";
  char wall[32];
  for (const auto& r : rows) {
    std::snprintf(wall, sizeof(wall), "%.6f", r.wall_time_s);
    out << r.n << "," << r.seed << ",";
    if (r.iterations_to_solve) {
      out << *r.iterations_to_solve;
    } else {
      out << "unsolved";
    }
    out << "," << wall << "\n";
  }
}

void write_noise_csv(const std::vector<NoiseRow>& rows, const std::filesystem::path& path) {
  auto out = open_or_throw(path);
  out << "sigma,success_rate,mean_iterations\n";
  for (const auto& r : rows) {
    out << fmt_double(r.sigma) << "," << fmt_double(r.success_rate) << ","
        << fmt_double(r.mean_iterations) << "\n";
  }
}

void write_curve_gnuplot(const std::filesystem::path& csv_path,
                         const std::filesystem::path& gp_path) {
  auto out = open_or_throw(gp_path);
  out << "set datafile separator ','\n"
      << "set xlabel 'iteration'\n"
      << "set ylabel 'best objective'\n"
      << "set y2label 'best intensity'\n"
      << "set y2tics\n"
      << "plot '" << csv_path.filename().string()
      << "' skip 1 using 1:2 with linespoints title 'objective', \\\n"
      << "     '' skip 1 using 1:3 axes x1y2 with linespoints title 'intensity'\n";
}

void write_sweep_gnuplot(const std::filesystem::path& csv_path,
                         const std::filesystem::path& gp_path) {
  auto out = open_or_throw(gp_path);
  out << "set datafile separator ','\n"
      << "set xlabel 'N'\n"
      << "set ylabel 'iterations to solve'\n"
      << "set logscale y\n"
      << "plot '" << csv_path.filename().string()
      << "' skip 1 using 1:3 with points pt 7 title 'trials'\n";
}

void write_noise_gnuplot(const std::filesystem::path& csv_path,
                         const std::filesystem::path& gp_path) {
  auto out = open_or_throw(gp_path);
  out << "set datafile separator ','\n"
      << "set xlabel 'sigma'\n"
      << "set ylabel 'success rate'\n"
      << "set yrange [0:1.05]\n"
      << "plot '" << csv_path.filename().string()
      << "' skip 1 using 1:2 with linespoints title 'success rate'\n";
}

}  // namespace evospi::bench
