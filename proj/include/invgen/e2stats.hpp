#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "invgen/primes.hpp"

namespace invgen {

struct SampleAll {};
struct SampleRandom {
  u64 count = 0;
  u64 seed = 0;
};
struct SampleStride {
  u64 stride = 1;
};
using SampleSpec = std::variant<SampleAll, SampleRandom, SampleStride>;

struct E2Config {
  u64 X = 0;
  u64 h = 0;
  double c = 0.02;
  // Defaults to [h^(1-2c)/2, h^(1-c)] when unset.
  std::optional<std::pair<u64, u64>> p1_window;
  SampleSpec sample = SampleAll{};
};

struct E2IntervalStat {
  u64 x = 0;
  u64 count = 0;
  double main_term = 0.0;
  bool deficient = false;
};

struct E2Summary {
  std::vector<E2IntervalStat> stats;
  double deficient_fraction = 0.0;
  double reference_ratio = 0.0;  // h^(-c), the exceptional-density shape
  std::vector<std::string> warnings;
};

/// Number of pairs (p1, p2), both prime, with p1 in [p1_lo, p1_hi] and
/// p1*p2 in [x, x+h]. Counted with multiplicity of representations.
u64 count_e2_in_interval(u64 x, u64 h, u64 p1_lo, u64 p1_hi);

/// h * sum of Lambda(m)/m over [ceil(P1^(1-2c)), floor(P1^(1-c))].
double main_term(double h, double P1, double c);

E2Summary scan_intervals(const E2Config& cfg);

/// Interval length max(64, ceil(exp(sqrt(log n * log log n)))).
u64 h_policy(u64 n);

/// Count of 1 <= n <= X whose prime factors are all <= B (1 counts).
u64 smooth_count(u64 X, u64 B);

std::string e2_csv(const E2Summary& summary);

}  // namespace invgen
