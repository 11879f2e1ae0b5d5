#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "invgen/e2stats.hpp"

using namespace invgen;

namespace {

// Oracle: walk the interval and test each member for a matching
// factorization m = p1 * p2.
u64 brute_e2(u64 x, u64 h, u64 p1_lo, u64 p1_hi) {
  u64 count = 0;
  for (u64 m = x; m <= x + h; ++m) {
    for (u64 p1 = std::max<u64>(p1_lo, 2); p1 <= p1_hi && p1 <= m; ++p1) {
      if (m % p1 != 0 || !is_prime(p1)) continue;
      if (m / p1 >= 2 && is_prime(m / p1)) ++count;
    }
  }
  return count;
}

u64 brute_smooth(u64 X, u64 B) {
  u64 count = 0;
  for (u64 n = 1; n <= X; ++n) {
    u64 v = n;
    for (u64 p = 2; p <= B && v > 1; ++p)
      while (v % p == 0) v /= p;
    if (v == 1) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("count_e2_in_interval examples") {
  // [90, 100]: 91 = 7*13, 93 = 3*31, 94 = 2*47, 95 = 5*19
  CHECK(count_e2_in_interval(90, 10, 2, 7) == 4);
  CHECK(count_e2_in_interval(90, 10, 11, 13) == 1);  // 91 = 13*7
  CHECK(count_e2_in_interval(90, 10, 20, 40) == 1);  // 93 = 31*3
  CHECK(count_e2_in_interval(90, 10, 50, 60) == 0);
  CHECK(count_e2_in_interval(90, 10, 7, 2) == 0);  // empty window
  CHECK_THROWS_AS(count_e2_in_interval(1, 10, 2, 7), std::invalid_argument);
  CHECK_THROWS_AS(count_e2_in_interval(90, 0, 2, 7), std::invalid_argument);
}

TEST_CASE("count_e2_in_interval equals the factorization oracle") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<u64> xdist(2, 100000), wdist(2, 200);
  for (int trial = 0; trial < 300; ++trial) {
    u64 x = xdist(rng);
    u64 h = 1 + rng() % 100;
    u64 lo = wdist(rng);
    u64 hi = lo + rng() % 100;
    REQUIRE(count_e2_in_interval(x, h, lo, hi) == brute_e2(x, h, lo, hi));
  }
}

TEST_CASE("semiprimes with both factors in the window count twice") {
  // [76, 77]: 77 = 7 * 11, both factors in [7, 11]
  CHECK(count_e2_in_interval(76, 1, 7, 11) == 2);
}

TEST_CASE("h_policy") {
  CHECK(h_policy(1000000) == 413);
  CHECK(h_policy(16) == 64);  // floor case
  CHECK(h_policy(100) == 64);
  CHECK_THROWS_AS(h_policy(15), std::invalid_argument);
  u64 prev = 0;
  for (u64 n = 16; n <= 1000000000000ull; n *= 10) {
    u64 h = h_policy(n);
    CHECK(h >= prev);
    prev = h;
  }
  // matches the defining formula directly
  double ln = std::log(1e9);
  u64 expect = (u64)std::ceil(std::exp(std::sqrt(ln * std::log(ln))));
  CHECK(h_policy(1000000000ull) == expect);
}

TEST_CASE("main_term equals h times the Mertens sum over the window") {
  double h = 500, P1 = 500, c = 0.02;
  u64 lo = (u64)std::ceil(std::pow(P1, 1.0 - 2.0 * c));
  u64 hi = (u64)std::floor(std::pow(P1, 1.0 - c));
  CHECK(main_term(h, P1, c) ==
        doctest::Approx(h * mertens_lambda_sum(lo, hi)).epsilon(1e-12));
  CHECK(main_term(100, 20, 0.24) >= 0.0);
  CHECK_THROWS_AS(main_term(100, 10, 0.02), std::invalid_argument);
  CHECK_THROWS_AS(main_term(100, 100, 0.6), std::invalid_argument);
}

TEST_CASE("main_term scales like c * h for large windows") {
  // sum of Lambda(m)/m over [P^(1-2c), P^(1-c)] ~ c log P
  double h = 1000, P1 = 1e6, c = 0.1;
  double expect = c * h * std::log(P1);
  double got = main_term(h, P1, c);
  CHECK(std::abs(got - expect) / expect < 0.25);
}

TEST_CASE("smooth_count examples and oracle") {
  CHECK(smooth_count(100, 5) == 34);
  CHECK(smooth_count(10, 2) == 4);  // 1, 2, 4, 8
  CHECK(smooth_count(1, 2) == 1);
  for (u64 X : {50ull, 1000ull, 5000ull})
    CHECK(smooth_count(X, X) == X);
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    u64 X = 10 + rng() % 3000;
    u64 B = 2 + rng() % 50;
    REQUIRE(smooth_count(X, B) == brute_smooth(X, B));
  }
  // monotone in both arguments
  CHECK(smooth_count(1000, 7) <= smooth_count(2000, 7));
  CHECK(smooth_count(1000, 7) <= smooth_count(1000, 11));
  CHECK_THROWS_AS(smooth_count(0, 2), std::invalid_argument);
}

TEST_CASE("scan_intervals is deterministic under a fixed seed") {
  E2Config cfg;
  cfg.X = 100000;
  cfg.h = 120;
  cfg.sample = SampleRandom{50, 42};
  E2Summary s1 = scan_intervals(cfg);
  E2Summary s2 = scan_intervals(cfg);
  REQUIRE(s1.stats.size() == 50);
  REQUIRE(s2.stats.size() == 50);
  for (size_t i = 0; i < 50; ++i) {
    CHECK(s1.stats[i].x == s2.stats[i].x);
    CHECK(s1.stats[i].count == s2.stats[i].count);
    CHECK(s1.stats[i].deficient == s2.stats[i].deficient);
  }
  CHECK(s1.deficient_fraction == s2.deficient_fraction);
}

TEST_CASE("scan_intervals stride and window override") {
  E2Config cfg;
  cfg.X = 1000;
  cfg.h = 133;  // (log 1000)^2 ~ 47.7, 1000^(1/10) ~ 2 -> out of range
  cfg.sample = SampleStride{100};
  cfg.p1_window = std::make_pair<u64, u64>(2, 50);
  E2Summary s = scan_intervals(cfg);
  CHECK(s.stats.size() == 10);  // x = 2, 102, ..., 902
  CHECK_FALSE(s.warnings.empty());
  for (const auto& st : s.stats)
    CHECK(st.count == brute_e2(st.x, cfg.h, 2, 50));
  CHECK(s.reference_ratio == doctest::Approx(std::pow(133.0, -0.02)));
}

TEST_CASE("scan_intervals input validation") {
  E2Config cfg;
  cfg.X = 1;
  cfg.h = 10;
  CHECK_THROWS_AS(scan_intervals(cfg), std::invalid_argument);
  cfg.X = 100;
  cfg.h = 0;
  CHECK_THROWS_AS(scan_intervals(cfg), std::invalid_argument);
  cfg.h = 10;
  cfg.c = 0.7;
  CHECK_THROWS_AS(scan_intervals(cfg), std::invalid_argument);
}

TEST_CASE("e2_csv shape") {
  E2Config cfg;
  cfg.X = 500;
  cfg.h = 64;
  cfg.sample = SampleStride{100};
  std::string csv = e2_csv(scan_intervals(cfg));
  size_t lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 1 + 5);  // header + x = 2, 102, 202, 302, 402
  CHECK(csv.rfind("x,count,main_term,deficient\n", 0) == 0);
}
