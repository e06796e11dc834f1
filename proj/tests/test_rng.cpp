#include <doctest.h>

#include <cmath>
#include <set>

#include "rng.hpp"

using namespace gpr;

TEST_CASE("rng: identical seed gives identical stream") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.gaussian() == b.gaussian());
  }
}

TEST_CASE("rng: gaussian moments over 1e6 draws") {
  Rng rng(9001);
  const int kDraws = 1000000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sum_sq += g * g;
  }
  const double mean = sum / kDraws;
  const double var = sum_sq / kDraws - mean * mean;
  CHECK(std::abs(mean) <= 0.02);
  CHECK(std::abs(var - 1.0) <= 0.05);
}

TEST_CASE("rng: uniform stays in [0,1)") {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("derive_seed: index-based and spread out") {
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));

  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 32; ++s) {
    for (std::uint64_t t = 0; t < 32; ++t) {
      seen.insert(derive_seed(123456789, s, t));
    }
  }
  CHECK(seen.size() == 32u * 32u);
}
