#pragma once

#include <filesystem>

#include "evospi/core.hpp"
#include "evospi/spi.hpp"

namespace evospi {

// Plain PBM (P1): one 0/1 per pixel.
void write_pattern_pbm(const Pattern& p, const std::filesystem::path& path);

// Plain 16-bit PGM (P2): pixel = floor(65535 * w_ij / max w). For inspection
// and projection only; never read back for computation.
void write_weights_pgm16(const WeightImage& w, const std::filesystem::path& path);

}  // namespace evospi
