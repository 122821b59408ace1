#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "evospi/rng.hpp"

namespace evospi {

// One candidate solution: N spins, each exactly +1 or -1.
class SpinVector {
 public:
  // empty placeholder, only valid as a not-yet-assigned slot
  SpinVector() = default;

  // throws std::invalid_argument if fewer than 2 states or any state is not +/-1
  explicit SpinVector(std::vector<std::int8_t> states);

  static SpinVector filled(std::size_t n, std::int8_t value);
  static SpinVector random(std::size_t n, RngStream& rng);

  std::size_t size() const { return states_.size(); }
  std::int8_t operator[](std::size_t i) const { return states_[i]; }
  const std::vector<std::int8_t>& states() const { return states_; }

  void flip(std::size_t i) { states_[i] = static_cast<std::int8_t>(-states_[i]); }
  SpinVector flipped() const;  // global sign flip

  bool operator==(const SpinVector&) const = default;

 private:
  std::vector<std::int8_t> states_;
};

// N x N coupling matrix: symmetric, non-negative, zero diagonal. This is the
// grayscale "object image" a measurement backend illuminates.
class WeightImage {
 public:
  // row-major weights; throws std::invalid_argument on any invariant violation
  WeightImage(std::size_t n, std::vector<double> weights);

  std::size_t n() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
  const std::vector<double>& data() const { return w_; }

  // sum over all ordered pairs i != j; the full-scale intensity of the image
  double total_weight() const { return total_; }
  double max_weight() const { return max_; }

 private:
  std::size_t n_;
  std::vector<double> w_;
  double total_ = 0.0;
  double max_ = 0.0;
};

// Ising energy -sum_{i,j} s_i s_j w_ij over all ordered pairs (the zero
// diagonal contributes nothing). Equals -2 * sum_{i<j} s_i s_j w_ij.
double hamiltonian(const SpinVector& s, const WeightImage& w);

}  // namespace evospi
