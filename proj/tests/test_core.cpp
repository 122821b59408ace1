#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "evospi/core.hpp"
#include "evospi/rng.hpp"

using namespace evospi;

namespace {

// test-local generator kept independent of library helpers on purpose
SpinVector arbitrary_spins(std::size_t n, RngStream& rng) {
  std::vector<std::int8_t> s(n);
  for (auto& v : s) v = rng.coin() ? 1 : -1;
  return SpinVector(std::move(s));
}

WeightImage arbitrary_image(std::size_t n, RngStream& rng) {
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = rng.uniform01() * 10.0;
      w[i * n + j] = v;
      w[j * n + i] = v;
    }
  }
  return WeightImage(n, std::move(w));
}

// straight transcription of the energy definition, summed the slow way
double energy_by_definition(const SpinVector& s, const WeightImage& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.n(); ++i) {
    for (std::size_t j = 0; j < w.n(); ++j) {
      acc += static_cast<double>(s[i]) * static_cast<double>(s[j]) * w.at(i, j);
    }
  }
  return -acc;
}

}  // namespace

TEST_CASE("spin vectors hold exactly +1/-1 states") {
  SpinVector s(std::vector<std::int8_t>{1, -1, 1});
  CHECK(s.size() == 3);
  CHECK(s[0] == 1);
  CHECK(s[1] == -1);
  CHECK(s.states() == std::vector<std::int8_t>{1, -1, 1});

  CHECK_THROWS_AS(SpinVector(std::vector<std::int8_t>{1}), std::invalid_argument);
  CHECK_THROWS_AS(SpinVector(std::vector<std::int8_t>{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(SpinVector(std::vector<std::int8_t>{1, 2}), std::invalid_argument);
}

TEST_CASE("flip is an involution and flipped negates every state") {
  SpinVector s(std::vector<std::int8_t>{1, -1, 1, 1});
  SpinVector orig = s;
  s.flip(2);
  CHECK(s[2] == -1);
  s.flip(2);
  CHECK(s == orig);

  SpinVector neg = orig.flipped();
  for (std::size_t i = 0; i < orig.size(); ++i) CHECK(neg[i] == -orig[i]);
  CHECK(neg.flipped() == orig);
}

TEST_CASE("filled and random constructors produce valid vectors") {
  SpinVector up = SpinVector::filled(5, 1);
  for (std::size_t i = 0; i < 5; ++i) CHECK(up[i] == 1);

  RngStream a(7, 0, 0, StreamPurpose::PopulationInit);
  RngStream b(7, 0, 0, StreamPurpose::PopulationInit);
  SpinVector ra = SpinVector::random(12, a);
  SpinVector rb = SpinVector::random(12, b);
  CHECK(ra == rb);  // same stream, same draw
  for (std::size_t i = 0; i < ra.size(); ++i)
    CHECK((ra[i] == 1 || ra[i] == -1));
}

TEST_CASE("weight images enforce symmetry, non-negativity, zero diagonal") {
  CHECK_NOTHROW(WeightImage(2, {0, 3, 3, 0}));
  // size mismatch
  CHECK_THROWS_AS(WeightImage(2, {0, 1, 1}), std::invalid_argument);
  // asymmetric
  CHECK_THROWS_AS(WeightImage(2, {0, 1, 2, 0}), std::invalid_argument);
  // negative weight
  CHECK_THROWS_AS(WeightImage(2, {0, -1, -1, 0}), std::invalid_argument);
  // lit diagonal
  CHECK_THROWS_AS(WeightImage(2, {1, 2, 2, 0}), std::invalid_argument);
}

TEST_CASE("total and max weight summarize the off-diagonal mass") {
  WeightImage w(3, {0, 2, 5, 2, 0, 1, 5, 1, 0});
  CHECK(w.total_weight() == doctest::Approx(16.0));  // both orders of each pair
  CHECK(w.max_weight() == doctest::Approx(5.0));
  CHECK(w.at(0, 2) == 5.0);
  CHECK(w.at(2, 0) == 5.0);
}

TEST_CASE("energy on a two-spin system matches hand computation") {
  WeightImage w(2, {0, 3, 3, 0});
  // aligned spins: -(2 * 3) ; opposed: +(2 * 3)
  CHECK(hamiltonian(SpinVector(std::vector<std::int8_t>{1, 1}), w) == doctest::Approx(-6.0));
  CHECK(hamiltonian(SpinVector(std::vector<std::int8_t>{1, -1}), w) == doctest::Approx(6.0));
}

TEST_CASE("energy equals the definitional double sum on random inputs") {
  RngStream rng(101, 0, 0, StreamPurpose::InstanceGen);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng.uniform_below(9);
    WeightImage w = arbitrary_image(n, rng);
    SpinVector s = arbitrary_spins(n, rng);
    const double got = hamiltonian(s, w);
    const double want = energy_by_definition(s, w);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("energy is invariant under a global spin flip") {
  RngStream rng(202, 0, 0, StreamPurpose::InstanceGen);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng.uniform_below(7);
    WeightImage w = arbitrary_image(n, rng);
    SpinVector s = arbitrary_spins(n, rng);
    CHECK(hamiltonian(s, w) == doctest::Approx(hamiltonian(s.flipped(), w)).epsilon(1e-12));
  }
}
