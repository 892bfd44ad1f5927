#include <doctest.h>

#include <cmath>
#include <vector>

#include "maskaug/rng.hpp"

using namespace maskaug;

TEST_CASE("SplitMix64 golden values") {
  SeededRng rng(42);
  CHECK(rng.next_u64() == 13679457532755275413ULL);
  CHECK(rng.next_u64() == 2949826092126892291ULL);
}

TEST_CASE("uniform range and determinism") {
  SeededRng a(9), b(9);
  for (int i = 0; i < 10000; ++i) {
    const double u = a.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(u == b.uniform());
  }
}

TEST_CASE("uniform_index covers its range evenly") {
  SeededRng rng(5);
  std::vector<int> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++counts[rng.uniform_index(7)];
  for (int c : counts) CHECK(std::abs(c - draws / 7) < 400);
  CHECK(rng.uniform_index(1) == 0);
}

TEST_CASE("normal moments") {
  SeededRng rng(77);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.01);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}
