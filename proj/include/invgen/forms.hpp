#pragma once

#include <cstdint>
#include <vector>

#include "invgen/primes.hpp"

namespace invgen {

/// n = (q^d - 1)/(q - 1) = 1 + q + ... + q^(d-1), the point count of a
/// projective space.
struct RepunitWitness {
  u64 q = 0;  // base, >= 2
  int d = 0;  // length, >= 3
  u64 value = 0;

  bool operator==(const RepunitWitness&) const = default;
};

/// All (q, d) with q >= 2, d >= 3 and 1 + q + ... + q^(d-1) = n.
/// Empty result means n is not of the projective-space form.
std::vector<RepunitWitness> repunit_decompose(u64 n);

/// Number of distinct n <= X with a nonempty repunit decomposition.
u64 count_repunits_upto(u64 X);

}  // namespace invgen
