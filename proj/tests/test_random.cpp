#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "picg/random.hpp"

using picg::RandomStream;

TEST_CASE("same seed, same stream") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("mt19937_64 output is the standard sequence for the mixed seed") {
  // The 10000th output of a default-seeded mt19937_64 is fixed by the standard.
  std::mt19937_64 reference;
  reference.discard(9999);
  CHECK(reference() == 9981545732273789042ULL);
}

TEST_CASE("derived streams differ per index and are reproducible") {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t k = 0; k < 64; ++k) {
    RandomStream s = RandomStream::derive(7, k);
    RandomStream again = RandomStream::derive(7, k);
    const auto x = s.next();
    CHECK(x == again.next());
    firsts.insert(x);
  }
  CHECK(firsts.size() == 64);
  CHECK(picg::derive_seed(7, 0) != picg::derive_seed(8, 0));
}

TEST_CASE("uniform_below stays in range and hits every residue") {
  RandomStream rng(1);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto x = rng.uniform_below(7);
    REQUIRE(x < 7);
    ++hits[x];
  }
  for (int h : hits) CHECK(h > 800);
  CHECK(rng.uniform_below(1) == 0);
  CHECK_THROWS_AS(rng.uniform_below(0), std::invalid_argument);
}

TEST_CASE("uniform01 lies in [0,1) with mean near one half") {
  RandomStream rng(3);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}
