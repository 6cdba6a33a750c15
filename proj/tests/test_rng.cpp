#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <set>

#include "gldp/rng.hpp"

namespace rng = gldp::rng;

TEST_CASE("draws are pure functions of their key") {
  CHECK(rng::uniform01(1, 2, 3) == rng::uniform01(1, 2, 3));
  CHECK(rng::at(42, 7, 9) == rng::at(42, 7, 9));
  CHECK(rng::uniform01(1, 2, 3) != rng::uniform01(2, 2, 3));
  CHECK(rng::uniform01(1, 2, 3) != rng::uniform01(1, 3, 2));
}

TEST_CASE("uniform draws live in [0,1)") {
  for (int k = 0; k < 2000; ++k) {
    const double u = rng::uniform01(9, 0, k);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("edge draws ignore endpoint order") {
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      CHECK(rng::edge_uniform(5, i, j) == rng::edge_uniform(5, j, i));
}

TEST_CASE("substreams do not collide") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 100; ++k) {
    seen.insert(rng::substream(1, rng::kSampleStream, k));
    seen.insert(rng::substream(1, rng::kTiltStream, k));
    seen.insert(rng::substream(1, rng::kOptStream, k));
    seen.insert(rng::substream(1, rng::kProbeStream, k));
  }
  CHECK(seen.size() == 400);
}

TEST_CASE("uniform moments at a fixed seed") {
  const int n = 100000;
  double mean = 0, m2 = 0;
  for (int k = 0; k < n; ++k) {
    const double u = rng::uniform01(123, 1, k);
    mean += u;
    m2 += u * u;
  }
  mean /= n;
  m2 /= n;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
  CHECK(m2 - mean * mean == doctest::Approx(1.0 / 12).epsilon(0.02));
}

TEST_CASE("normal moments at a fixed seed") {
  const int n = 100000;
  double mean = 0, m2 = 0;
  for (int k = 0; k < n; ++k) {
    const double z = rng::normal(77, 0, k);
    mean += z;
    m2 += z * z;
  }
  mean /= n;
  m2 /= n;
  CHECK(std::fabs(mean) < 0.02);
  CHECK(m2 == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("mixing diffuses single-bit changes") {
  double total = 0;
  for (int b = 0; b < 64; ++b) {
    const std::uint64_t a = rng::at(11, 22, 33);
    const std::uint64_t c = rng::at(11, 22, 33ULL ^ (1ULL << b));
    total += std::popcount(a ^ c);
  }
  CHECK(total / 64 > 24.0);
  CHECK(total / 64 < 40.0);
}
