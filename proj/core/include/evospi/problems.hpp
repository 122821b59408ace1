#pragma once

#include <cstdint>
#include <filesystem>
#include <variant>
#include <vector>

#include "evospi/core.hpp"

namespace evospi {

// A multiset of positive integers to split into two groups with equal sums.
class NumberPartitionInstance {
 public:
  // throws std::invalid_argument if fewer than 2 numbers or any number < 1
  explicit NumberPartitionInstance(std::vector<std::int64_t> numbers);

  std::size_t size() const { return numbers_.size(); }
  const std::vector<std::int64_t>& numbers() const { return numbers_; }
  std::int64_t total() const { return total_; }

 private:
  std::vector<std::int64_t> numbers_;
  std::int64_t total_ = 0;
};

// A weighted undirected graph on n nodes; connection strengths are symmetric,
// non-negative, zero on the diagonal.
class MaxCutInstance {
 public:
  MaxCutInstance(std::size_t n, std::vector<double> weights);

  std::size_t size() const { return weights_.n(); }
  const WeightImage& weights() const { return weights_; }

 private:
  WeightImage weights_;
};

struct PartitionSolution {
  std::vector<std::int64_t> group_a;  // numbers with spin +1
  std::vector<std::int64_t> group_b;  // numbers with spin -1
  std::int64_t sum_a = 0;
  std::int64_t sum_b = 0;
  std::int64_t error = 0;  // |sum_a - sum_b|
};

struct CutSolution {
  std::vector<std::size_t> group_a;  // node indices with spin +1
  std::vector<std::size_t> group_b;  // node indices with spin -1
  double cut_value = 0.0;            // total weight crossing the partition
};

// w[i][j] = numbers[i] * numbers[j] for i != j, zero diagonal.
WeightImage encode_number_partition(const NumberPartitionInstance& inst);

// Identity embedding: the cut objective is realized by the pattern encoding.
WeightImage encode_max_cut(const MaxCutInstance& inst);

PartitionSolution decode_partition(const SpinVector& s, const NumberPartitionInstance& inst);
CutSolution decode_cut(const SpinVector& s, const MaxCutInstance& inst);

// Exact cut of s against the instance, summed in a fixed (i < j) order.
double cut_value(const SpinVector& s, const MaxCutInstance& inst);

// Enumeration bound for the exhaustive oracle.
inline constexpr std::size_t kBruteForceLimit = 26;

struct PartitionOptimum {
  std::int64_t error;
  SpinVector spins;
};

struct CutOptimum {
  double cut_value;
  SpinVector spins;
};

// Exhaustive oracle over the 2^(N-1) sign patterns with spin 0 fixed to +1
// (global flips leave both objectives unchanged). The enumeration index m has
// bit k set exactly when spin k+1 is -1; ties are broken by the lowest m.
// Throws std::invalid_argument when N exceeds kBruteForceLimit.
PartitionOptimum brute_force(const NumberPartitionInstance& inst);
CutOptimum brute_force(const MaxCutInstance& inst);

// Seeded instance generators used by the experiment harness.
// Partition numbers are uniform integers in [1, 100]; max-cut weights are
// uniform in [0, 1) rounded to 3 decimals on a complete graph.
NumberPartitionInstance random_partition_instance(std::size_t n, std::uint64_t seed);
MaxCutInstance random_max_cut_instance(std::size_t n, std::uint64_t seed);

// Partition instance with guaranteed zero-error splits: uniform values in
// [1, 100] sampled as matched pairs (one (a, b, a+b) triple when n is odd).
NumberPartitionInstance perfect_partition_instance(std::size_t n, std::uint64_t seed);

using ProblemInstance = std::variant<NumberPartitionInstance, MaxCutInstance>;

// Plain-text instance file: first line "partition" or "maxcut"; partition has
// one line of space-separated integers, maxcut has N followed by N rows of N
// space-separated weights. Parse errors cite the offending line.
ProblemInstance load_instance(const std::filesystem::path& path);
void save_instance(const ProblemInstance& inst, const std::filesystem::path& path);

}  // namespace evospi
