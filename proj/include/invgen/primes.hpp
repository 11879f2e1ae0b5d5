#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace invgen {

using u64 = std::uint64_t;

/// Full factorization of an integer n <= 2^62.
struct FactorMap {
  u64 n = 0;
  // (prime, exponent), primes strictly ascending, exponents >= 1.
  std::vector<std::pair<u64, int>> factors;

  u64 largest_prime() const { return factors.empty() ? 0 : factors.back().first; }
};

inline constexpr u64 kMaxInteger = u64(1) << 62;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

/// Deterministic primality test, exact for all n < 2^64.
bool is_prime(u64 n);

/// Prime indicator over [lo, hi] inclusive; position i corresponds to lo+i.
/// Throws std::invalid_argument for lo < 2 or lo > hi, std::length_error
/// for ranges wider than 10^9.
std::vector<bool> sieve_segment(u64 lo, u64 hi);

/// (p, a) with p prime, a >= 1 and p^a = n, if n is a prime power.
std::optional<std::pair<u64, int>> prime_power_decompose(u64 n);

/// Complete factorization: trial division below 10^6, Pollard rho (Brent)
/// on the remaining cofactors.
FactorMap factorize(u64 n);

/// Largest prime r with lo <= r <= hi, by descending primality tests.
std::optional<u64> largest_prime_in(u64 lo, u64 hi);

/// Sum of Lambda(m)/m over lo <= m <= hi, Lambda the von Mangoldt function.
/// primes_only drops the prime-power terms p^k, k >= 2.
double mertens_lambda_sum(u64 lo, u64 hi, bool primes_only = false);

/// Primes up to limit, cached and grown on demand. Thread-safe.
const std::vector<u64>& base_primes(u64 limit);

}  // namespace invgen
