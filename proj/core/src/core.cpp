#include "evospi/core.hpp"

#include <stdexcept>
#include <string>

namespace evospi {

SpinVector::SpinVector(std::vector<std::int8_t> states) : states_(std::move(states)) {
  if (states_.size() < 2) {
    throw std::invalid_argument("SpinVector needs at least 2 states, got " +
                                std::to_string(states_.size()));
  }
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i] != 1 && states_[i] != -1) {
      throw std::invalid_argument("SpinVector state " + std::to_string(i) +
                                  " is " + std::to_string(states_[i]) +
                                  ", must be +1 or -1");
    }
  }
}

SpinVector SpinVector::filled(std::size_t n, std::int8_t value) {
  return SpinVector(std::vector<std::int8_t>(n, value));
}

SpinVector SpinVector::random(std::size_t n, RngStream& rng) {
  std::vector<std::int8_t> states(n);
  for (auto& s : states) s = rng.coin() ? 1 : -1;
  return SpinVector(std::move(states));
}

SpinVector SpinVector::flipped() const {
  std::vector<std::int8_t> states(states_);
  for (auto& s : states) s = static_cast<std::int8_t>(-s);
  return SpinVector(std::move(states));
}

WeightImage::WeightImage(std::size_t n, std::vector<double> weights)
    : n_(n), w_(std::move(weights)) {
  if (n_ < 2) {
    throw std::invalid_argument("WeightImage needs n >= 2, got " + std::to_string(n_));
  }
  if (w_.size() != n_ * n_) {
    throw std::invalid_argument("WeightImage expects " + std::to_string(n_ * n_) +
                                " weights, got " + std::to_string(w_.size()));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (w_[i * n_ + i] != 0.0) {
      throw std::invalid_argument("WeightImage diagonal entry (" + std::to_string(i) +
                                  "," + std::to_string(i) + ") must be 0");
    }
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = w_[i * n_ + j];
      if (!(v >= 0.0)) {  // also rejects NaN
        throw std::invalid_argument("WeightImage entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") is negative or NaN");
      }
      if (v != w_[j * n_ + i]) {
        throw std::invalid_argument("WeightImage is not symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (i != j) {
        total_ += v;
        if (v > max_) max_ = v;
      }
    }
  }
}

double hamiltonian(const SpinVector& s, const WeightImage& w) {
  if (s.size() != w.n()) {
    throw std::invalid_argument("hamiltonian: spin count " + std::to_string(s.size()) +
                                " does not match image size " + std::to_string(w.n()));
  }
  const std::size_t n = w.n();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      acc += static_cast<double>(s[i] * s[j]) * w.at(i, j);
    }
  }
  return -2.0 * acc;
}

}  // namespace evospi
