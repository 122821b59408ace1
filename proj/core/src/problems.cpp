#include "evospi/problems.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace evospi {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

NumberPartitionInstance::NumberPartitionInstance(std::vector<std::int64_t> numbers)
    : numbers_(std::move(numbers)) {
  if (numbers_.size() < 2) {
    throw std::invalid_argument("partition instance needs at least 2 numbers, got " +
                                std::to_string(numbers_.size()));
  }
  for (std::size_t i = 0; i < numbers_.size(); ++i) {
    if (numbers_[i] < 1) {
      throw std::invalid_argument("partition number " + std::to_string(i) + " is " +
                                  std::to_string(numbers_[i]) + ", must be >= 1");
    }
    total_ += numbers_[i];
  }
}

MaxCutInstance::MaxCutInstance(std::size_t n, std::vector<double> weights)
    : weights_(n, std::move(weights)) {}

WeightImage encode_number_partition(const NumberPartitionInstance& inst) {
  const std::size_t n = inst.size();
  const auto& a = inst.numbers();
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = static_cast<double>(a[i]) * static_cast<double>(a[j]);
      w[i * n + j] = p;
      w[j * n + i] = p;
    }
  }
  return WeightImage(n, std::move(w));
}

WeightImage encode_max_cut(const MaxCutInstance& inst) { return inst.weights(); }

PartitionSolution decode_partition(const SpinVector& s, const NumberPartitionInstance& inst) {
  if (s.size() != inst.size()) {
    throw std::invalid_argument("decode_partition: spin count " + std::to_string(s.size()) +
                                " does not match instance size " + std::to_string(inst.size()));
  }
  PartitionSolution sol;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] > 0) {
      sol.group_a.push_back(inst.numbers()[i]);
      sol.sum_a += inst.numbers()[i];
    } else {
      sol.group_b.push_back(inst.numbers()[i]);
      sol.sum_b += inst.numbers()[i];
    }
  }
  sol.error = std::llabs(sol.sum_a - sol.sum_b);
  return sol;
}

double cut_value(const SpinVector& s, const MaxCutInstance& inst) {
  if (s.size() != inst.size()) {
    throw std::invalid_argument("cut_value: spin count " + std::to_string(s.size()) +
                                " does not match instance size " + std::to_string(inst.size()));
  }
  const std::size_t n = inst.size();
  double cut = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s[i] != s[j]) cut += inst.weights().at(i, j);
    }
  }
  return cut;
}

CutSolution decode_cut(const SpinVector& s, const MaxCutInstance& inst) {
  CutSolution sol;
  sol.cut_value = cut_value(s, inst);  // validates the lengths
  for (std::size_t i = 0; i < s.size(); ++i) {
    (s[i] > 0 ? sol.group_a : sol.group_b).push_back(i);
  }
  return sol;
}

namespace {

void check_oracle_bound(std::size_t n) {
  if (n > kBruteForceLimit) {
    throw std::invalid_argument("brute_force: N = " + std::to_string(n) +
                                " exceeds the enumeration bound of " +
                                std::to_string(kBruteForceLimit) +
                                "; refusing to enumerate 2^" + std::to_string(n - 1) +
                                " states");
  }
}

// spin 0 fixed +1; bit k of mask set <=> spin k+1 is -1
SpinVector spins_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<std::int8_t> states(n, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if ((mask >> k) & 1u) states[k + 1] = -1;
  }
  return SpinVector(std::move(states));
}

}  // namespace

PartitionOptimum brute_force(const NumberPartitionInstance& inst) {
  const std::size_t n = inst.size();
  check_oracle_bound(n);
  const auto& a = inst.numbers();
  const std::uint64_t count = 1ULL << (n - 1);
  std::int64_t best_error = -1;
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::int64_t signed_sum = a[0];
    for (std::size_t k = 0; k + 1 < n; ++k) {
      signed_sum += ((mask >> k) & 1u) ? -a[k + 1] : a[k + 1];
    }
    const std::int64_t err = std::llabs(signed_sum);
    if (best_error < 0 || err < best_error) {
      best_error = err;
      best_mask = mask;
    }
  }
  return {best_error, spins_from_mask(n, best_mask)};
}

CutOptimum brute_force(const MaxCutInstance& inst) {
  const std::size_t n = inst.size();
  check_oracle_bound(n);
  const std::uint64_t count = 1ULL << (n - 1);
  double best_cut = -1.0;
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const double cut = cut_value(spins_from_mask(n, mask), inst);
    if (cut > best_cut) {
      best_cut = cut;
      best_mask = mask;
    }
  }
  return {best_cut, spins_from_mask(n, best_mask)};
}

NumberPartitionInstance random_partition_instance(std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, 0, 0, StreamPurpose::InstanceGen);
  std::vector<std::int64_t> numbers(n);
  for (auto& v : numbers) v = static_cast<std::int64_t>(rng.uniform_below(100)) + 1;
  return NumberPartitionInstance(std::move(numbers));
}

MaxCutInstance random_max_cut_instance(std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, 0, 0, StreamPurpose::InstanceGen);
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::round(rng.uniform01() * 1000.0) / 1000.0;
      w[i * n + j] = v;
      w[j * n + i] = v;
    }
  }
  return MaxCutInstance(n, std::move(w));
}

NumberPartitionInstance perfect_partition_instance(std::size_t n, std::uint64_t seed) {
  if (n < 2) {
    throw std::invalid_argument("perfect_partition_instance needs n >= 2");
  }
  // Sampled as matched pairs (plus one (a, b, a+b) triple when n is odd):
  // splitting every pair guarantees error 0, and the 2^(n/2) such splits keep
  // the zero-error states reachably dense even at small n.
  RngStream rng(seed, 0, 0, StreamPurpose::InstanceGen);
  std::vector<std::int64_t> numbers;
  numbers.reserve(n);
  std::size_t remaining = n;
  if (remaining % 2 == 1) {
    const auto a = static_cast<std::int64_t>(rng.uniform_below(50)) + 1;
    const auto b = static_cast<std::int64_t>(rng.uniform_below(50)) + 1;
    numbers.insert(numbers.end(), {a, b, a + b});
    remaining -= 3;
  }
  while (remaining > 0) {
    const auto v = static_cast<std::int64_t>(rng.uniform_below(100)) + 1;
    numbers.insert(numbers.end(), {v, v});
    remaining -= 2;
  }
  return NumberPartitionInstance(std::move(numbers));
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open instance file " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) parse_fail(path, 1, "empty file, expected 'partition' or 'maxcut'");
  // tolerate trailing whitespace/CR on the kind line
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
    line.pop_back();

  if (line == "partition") {
    std::string numbers_line;
    if (!std::getline(in, numbers_line)) parse_fail(path, 2, "missing numbers line");
    std::istringstream iss(numbers_line);
    std::vector<std::int64_t> numbers;
    std::string tok;
    while (iss >> tok) {
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || p != tok.data() + tok.size()) {
        parse_fail(path, 2, "'" + tok + "' is not an integer");
      }
      numbers.push_back(v);
    }
    if (numbers.empty()) parse_fail(path, 2, "no numbers given");
    return NumberPartitionInstance(std::move(numbers));
  }

  if (line == "maxcut") {
    std::string n_line;
    if (!std::getline(in, n_line)) parse_fail(path, 2, "missing node count");
    std::size_t n = 0;
    {
      std::istringstream iss(n_line);
      long long v = 0;
      if (!(iss >> v) || v < 2) parse_fail(path, 2, "node count must be an integer >= 2");
      n = static_cast<std::size_t>(v);
    }
    std::vector<double> w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      std::string row;
      if (!std::getline(in, row)) parse_fail(path, 3 + i, "missing weight row");
      std::istringstream iss(row);
      for (std::size_t j = 0; j < n; ++j) {
        if (!(iss >> w[i * n + j])) {
          parse_fail(path, 3 + i, "expected " + std::to_string(n) + " weights, found " +
                                      std::to_string(j));
        }
      }
    }
    return MaxCutInstance(n, std::move(w));
  }

  parse_fail(path, 1, "unknown instance kind '" + line + "', expected 'partition' or 'maxcut'");
}

void save_instance(const ProblemInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write instance file " + path.string());
  }
  if (const auto* p = std::get_if<NumberPartitionInstance>(&inst)) {
    out << "partition\n";
    for (std::size_t i = 0; i < p->size(); ++i) {
      out << (i ? " " : "") << p->numbers()[i];
    }
    out << "\n";
  } else {
    const auto& mc = std::get<MaxCutInstance>(inst);
    const std::size_t n = mc.size();
    out << "maxcut\n" << n << "\n";
    out.precision(17);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out << (j ? " " : "") << mc.weights().at(i, j);
      }
      out << "\n";
    }
  }
  if (!out) {
    throw std::runtime_error("failed while writing " + path.string());
  }
}

}  // namespace evospi
