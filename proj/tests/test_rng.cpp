#include <doctest.h>

#include <cstdlib>
#include <set>

#include "qnet/rng.hpp"

using namespace qnet;

TEST_SUITE("rng") {

// Reference values computed from the published SplitMix64 recurrence.
TEST_CASE("stream matches the splitmix64 reference sequence") {
  rng::Stream s(1234567);
  CHECK(s.next() == 6457827717110365317ull);
  CHECK(s.next() == 3203168211198807973ull);
  CHECK(s.next() == 9817491932198370423ull);

  rng::Stream z(0);
  CHECK(z.next() == 16294208416658607535ull);
  CHECK(z.next() == 7960286522194355700ull);
}

TEST_CASE("mix64 equals one splitmix64 step") {
  CHECK(rng::mix64(0) == 16294208416658607535ull);
  rng::Stream s(42);
  CHECK(rng::mix64(42) == s.next());
}

TEST_CASE("derive reference values and sensitivity") {
  CHECK(rng::derive(1ull, 2ull, 3ull) == 105800997263431414ull);
  CHECK(rng::derive(1ull, 2ull) == 5026954255020281043ull);
  CHECK(rng::derive(1ull) == 10451216379200822465ull);

  // Part order, seed, and arity all matter.
  CHECK(rng::derive(1ull, 2ull, 3ull) != rng::derive(1ull, 3ull, 2ull));
  CHECK(rng::derive(1ull, 2ull) != rng::derive(3ull, 2ull));
  CHECK(rng::derive(7ull, 0ull) != rng::derive(7ull));
}

TEST_CASE("to_unit stays in [0,1) including the extremes") {
  CHECK(rng::to_unit(0) == 0.0);
  CHECK(rng::to_unit(~0ull) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rng::to_unit(~0ull) < 1.0);
  CHECK(rng::unit_from_key(77) == doctest::Approx(0.3841674254473444).epsilon(1e-15));
}

TEST_CASE("uniform01 mean and range sanity") {
  rng::Stream s(9001);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // 3 sigma band around 1/2: sigma = 1/sqrt(12 * 1e5).
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.0028));
}

TEST_CASE("below is unbiased over small ranges") {
  rng::Stream s(31337);
  int counts[5] = {0, 0, 0, 0, 0};
  const int trials = 50000;
  for (int i = 0; i < trials; ++i) {
    const uint64_t v = s.below(5);
    REQUIRE(v < 5);
    counts[v]++;
  }
  for (const int c : counts) {
    // 4.4 sigma envelope, sigma = sqrt(n p (1-p)) ~ 89.
    CHECK(std::abs(c - trials / 5) < 400);
  }
}

TEST_CASE("streams with equal seeds replay identically") {
  rng::Stream a(555), b(555);
  for (int i = 0; i < 64; ++i) REQUIRE(a.next() == b.next());
  std::set<uint64_t> seen;
  rng::Stream c(555);
  for (int i = 0; i < 1000; ++i) seen.insert(c.next());
  CHECK(seen.size() == 1000);
}

}  // TEST_SUITE
