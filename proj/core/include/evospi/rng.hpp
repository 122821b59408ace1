#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>

namespace evospi {

// Tags the independent random streams drawn for one (iteration, member) pair.
// Two streams that differ in any of (master seed, iteration, member, purpose)
// are unrelated; identical keys always reproduce the identical sequence.
enum class StreamPurpose : std::uint64_t {
  InstanceGen = 1,
  PopulationInit,
  ParentSelect,
  CrossoverMask,
  Mutation,
  MeasureNoise,
  TrialSeed,
};

namespace detail {

// splitmix64 finalizer (Steele, Lea, Flood)
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// fold one identifier into a seed
constexpr std::uint64_t fold(std::uint64_t state, std::uint64_t value) {
  return mix64(state ^ mix64(value + kGolden));
}

}  // namespace detail

// Derive a sub-seed from a master seed and up to three identifiers. Used to
// hand independent master seeds to trials, backends and generators without
// coordinating a global counter.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = detail::mix64(master + detail::kGolden);
  s = detail::fold(s, a);
  s = detail::fold(s, b);
  return detail::fold(s, c);
}

// Counter-based deterministic random stream, keyed by
// (master seed, iteration, member, purpose). Satisfies
// UniformRandomBitGenerator; the distribution helpers below are hand-rolled
// so that the produced values do not depend on the standard library build.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t iteration,
            std::uint64_t member, StreamPurpose purpose)
      : state_(derive_seed(master_seed, iteration, member,
                           static_cast<std::uint64_t>(purpose))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  // next 64 random bits (splitmix64 step)
  result_type operator()() {
    state_ += detail::kGolden;
    return detail::mix64(state_);
  }

  // uniform double in [0, 1)
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // fair coin
  bool coin() { return ((*this)() >> 63) != 0; }

  // uniform integer in [0, n); n must be positive
  std::size_t uniform_below(std::size_t n) {
    using u128 = unsigned __int128;
    return static_cast<std::size_t>(
        (static_cast<u128>((*this)()) * static_cast<u128>(n)) >> 64);
  }

  // standard normal deviate, Box-Muller
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace evospi
