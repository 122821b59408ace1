#include "evospi/spi.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace evospi {

Pattern::Pattern(std::size_t n, std::vector<std::uint8_t> bits)
    : n_(n), bits_(std::move(bits)) {
  if (n_ < 2) {
    throw std::invalid_argument("Pattern needs n >= 2, got " + std::to_string(n_));
  }
  if (bits_.size() != n_ * n_) {
    throw std::invalid_argument("Pattern expects " + std::to_string(n_ * n_) +
                                " bits, got " + std::to_string(bits_.size()));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (bits_[i * n_ + i] != 0) {
      throw std::invalid_argument("Pattern diagonal pixel (" + std::to_string(i) +
                                  "," + std::to_string(i) + ") must be dark");
    }
    for (std::size_t j = 0; j < n_; ++j) {
      if (bits_[i * n_ + j] > 1) {
        throw std::invalid_argument("Pattern pixel (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") must be 0 or 1");
      }
      if (bits_[i * n_ + j] != bits_[j * n_ + i]) {
        throw std::invalid_argument("Pattern is not symmetric at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
      }
    }
  }
}

Pattern pattern_from_spins(const SpinVector& s) {
  const std::size_t n = s.size();
  std::vector<std::uint8_t> bits(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s[i] != s[j]) {
        bits[i * n + j] = 1;
        bits[j * n + i] = 1;
      }
    }
  }
  return Pattern(n, std::move(bits));
}

double ideal_intensity(const SpinVector& s, const WeightImage& w) {
  if (s.size() != w.n()) {
    throw std::invalid_argument("ideal_intensity: spin count " + std::to_string(s.size()) +
                                " does not match image size " + std::to_string(w.n()));
  }
  const std::size_t n = w.n();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s[i] != s[j]) acc += w.at(i, j);
    }
  }
  return 2.0 * acc;  // each disagreeing pair is bright at (i,j) and (j,i)
}

double pattern_intensity(const Pattern& p, const WeightImage& w) {
  if (p.n() != w.n()) {
    throw std::invalid_argument("pattern_intensity: pattern size " + std::to_string(p.n()) +
                                " does not match image size " + std::to_string(w.n()));
  }
  const std::size_t n = w.n();
  double acc = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) {
    if (p.bits()[i]) acc += w.data()[i];
  }
  return acc;
}

void NoiseModel::validate() const {
  if (!(gaussian_sigma >= 0.0)) {
    throw std::invalid_argument("NoiseModel: gaussian_sigma must be >= 0");
  }
  if (quantization_bits < 0 || quantization_bits > 16) {
    throw std::invalid_argument("NoiseModel: quantization_bits must be in [0, 16], got " +
                                std::to_string(quantization_bits));
  }
  if (!(dark_offset >= 0.0)) {
    throw std::invalid_argument("NoiseModel: dark_offset must be >= 0");
  }
}

std::vector<double> IdealBackend::measure_batch(std::span<const Pattern> patterns,
                                                std::uint64_t /*iteration*/) {
  std::vector<double> out;
  out.reserve(patterns.size());
  for (const auto& p : patterns) out.push_back(pattern_intensity(p, image_));
  return out;
}

NoisyBackend::NoisyBackend(WeightImage image, NoiseModel model, std::uint64_t noise_seed)
    : image_(std::move(image)), model_(model), noise_seed_(noise_seed) {
  model_.validate();
}

std::vector<double> NoisyBackend::measure_batch(std::span<const Pattern> patterns,
                                                std::uint64_t iteration) {
  const double full_scale = image_.total_weight();
  const double sigma_abs = model_.gaussian_sigma * full_scale;
  std::vector<double> out;
  out.reserve(patterns.size());
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    RngStream rng(noise_seed_, iteration, k, StreamPurpose::MeasureNoise);
    double v = pattern_intensity(patterns[k], image_) + model_.dark_offset +
               rng.normal() * sigma_abs;
    if (model_.quantization_bits > 0) {
      const double range = full_scale + model_.dark_offset + 4.0 * sigma_abs;
      const double levels = static_cast<double>((1u << model_.quantization_bits) - 1);
      const double step = range / levels;
      v = std::round(v / step) * step;
    }
    out.push_back(std::max(v, 0.0));
  }
  return out;
}

std::vector<double> ReplayBackend::measure_batch(std::span<const Pattern> patterns,
                                                 std::uint64_t /*iteration*/) {
  if (remaining() < patterns.size()) {
    throw std::runtime_error("replay trace exhausted: batch of " +
                             std::to_string(patterns.size()) + " requested but only " +
                             std::to_string(remaining()) + " recorded values remain");
  }
  std::vector<double> out(values_.begin() + next_, values_.begin() + next_ + patterns.size());
  next_ += patterns.size();
  return out;
}

std::unique_ptr<ReplayBackend> replay_load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open replay trace " + path.string());
  }
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    // trim
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(first, last - first + 1);
    double v = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size()) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": '" + tok + "' is not a number");
    }
    values.push_back(v);
  }
  return std::make_unique<ReplayBackend>(std::move(values));
}

}  // namespace evospi
