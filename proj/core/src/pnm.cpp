#include "evospi/pnm.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace evospi {

namespace {

std::ofstream open_or_throw(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write image file " + path.string());
  }
  return out;
}

}  // namespace

void write_pattern_pbm(const Pattern& p, const std::filesystem::path& path) {
  auto out = open_or_throw(path);
  const std::size_t n = p.n();
  out << "P1\n" << n << " " << n << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out << (j ? " " : "") << static_cast<int>(p.at(i, j));
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

void write_weights_pgm16(const WeightImage& w, const std::filesystem::path& path) {
  auto out = open_or_throw(path);
  const std::size_t n = w.n();
  const double max = w.max_weight();
  out << "P2\n" << n << " " << n << "\n65535\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint32_t v =
          max > 0.0 ? static_cast<std::uint32_t>(std::floor(65535.0 * w.at(i, j) / max)) : 0;
      out << (j ? " " : "") << v;
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

}  // namespace evospi
