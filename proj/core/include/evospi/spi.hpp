#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "evospi/core.hpp"
#include "evospi/rng.hpp"

namespace evospi {

// N x N binary illumination mask: bright (1) exactly where the generating
// spins disagree, so the diagonal is always dark and the mask is symmetric.
class Pattern {
 public:
  // row-major 0/1 bits; throws std::invalid_argument on invariant violations
  Pattern(std::size_t n, std::vector<std::uint8_t> bits);

  std::size_t n() const { return n_; }
  std::uint8_t at(std::size_t i, std::size_t j) const { return bits_[i * n_ + j]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const Pattern&) const = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

// bits[i][j] = (1 - s_i s_j) / 2; invariant under a global sign flip
Pattern pattern_from_spins(const SpinVector& s);

// Noise-free intensity, evaluated pair-wise from the spins:
// sum_{i != j} w_ij (1 - s_i s_j) / 2. Affine in the Hamiltonian with
// positive slope, so larger intensity means a better candidate.
double ideal_intensity(const SpinVector& s, const WeightImage& w);

// The literal pixel-wise inner product between a mask and the object image.
// Algebraically equal to ideal_intensity of the generating spins; kept as a
// separate route so the two can be checked against each other.
double pattern_intensity(const Pattern& p, const WeightImage& w);

// Detector degradation applied by NoisyBackend. Sigma is the additive
// Gaussian std in units of the image's full-scale intensity; quantization
// (when bits > 0) rounds onto 2^bits levels spanning
// [0, full_scale + dark_offset + 4 * sigma * full_scale].
struct NoiseModel {
  double gaussian_sigma = 0.01;
  int quantization_bits = 12;  // 0 disables quantization; at most 16
  double dark_offset = 0.0;

  void validate() const;  // throws std::invalid_argument on out-of-range fields
};

// A source of single-pixel measurements. Returns exactly one intensity per
// submitted pattern, in submission order. `iteration` keys any internal
// randomness by (iteration, index-in-batch), so results never depend on
// evaluation order within a batch.
class MeasurementBackend {
 public:
  virtual ~MeasurementBackend() = default;
  virtual std::vector<double> measure_batch(std::span<const Pattern> patterns,
                                            std::uint64_t iteration) = 0;
};

// Exact pixel-wise measurements against a weight image.
class IdealBackend final : public MeasurementBackend {
 public:
  explicit IdealBackend(WeightImage image) : image_(std::move(image)) {}

  std::vector<double> measure_batch(std::span<const Pattern> patterns,
                                    std::uint64_t iteration) override;

  const WeightImage& image() const { return image_; }

 private:
  WeightImage image_;
};

// Ideal measurement plus dark offset, additive Gaussian noise and optional
// quantization, clamped to be non-negative. Noise for the pattern at batch
// index k of iteration t comes from the stream (seed, t, k, MeasureNoise).
class NoisyBackend final : public MeasurementBackend {
 public:
  NoisyBackend(WeightImage image, NoiseModel model, std::uint64_t noise_seed);

  std::vector<double> measure_batch(std::span<const Pattern> patterns,
                                    std::uint64_t iteration) override;

  const WeightImage& image() const { return image_; }
  const NoiseModel& model() const { return model_; }

 private:
  WeightImage image_;
  NoiseModel model_;
  std::uint64_t noise_seed_;
};

// Feeds back pre-recorded intensities (e.g. captured from real hardware) in
// file order. Throws std::runtime_error on exhaustion, reporting how many
// values remained.
class ReplayBackend final : public MeasurementBackend {
 public:
  explicit ReplayBackend(std::vector<double> values)
      : values_(std::move(values)) {}

  std::vector<double> measure_batch(std::span<const Pattern> patterns,
                                    std::uint64_t iteration) override;

  std::size_t remaining() const { return values_.size() - next_; }

 private:
  std::vector<double> values_;
  std::size_t next_ = 0;
};

// Replay trace file: one decimal intensity per line, '#' starts a comment,
// blank lines ignored. Parse failures cite the line number.
std::unique_ptr<ReplayBackend> replay_load(const std::filesystem::path& path);

}  // namespace evospi
