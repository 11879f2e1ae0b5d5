#pragma once

#include <cstdint>
#include <vector>

#include "invgen/primes.hpp"

namespace invgen {

/// Base-p digits, least significant first.
struct DigitVector {
  u64 base = 0;
  std::vector<u64> digits;

  u64 value() const;
};

DigitVector to_digits(u64 n, u64 base);

/// Whether p divides C(n, i). By Kummer's criterion p does NOT divide
/// C(n, i) exactly when every base-p digit of i is <= the matching digit
/// of n.
bool divides_binomial(u64 p, u64 n, u64 i);

/// Whether every C(n, i), 1 <= i <= n-1, is divisible by p1 or p2.
bool binomial_cover_check(u64 n, u64 p1, u64 p2);

/// |{i in [0, n] : p does not divide C(n, i)}| = prod (d_j + 1) over the
/// base-p digits d_j of n.
u64 dominated_count(u64 n, u64 p);

}  // namespace invgen
