#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "invgen/primes.hpp"

namespace invgen {

enum class SearchMode { prime_order, question1 };

/// Tunables of the certificate search.
struct SearchPolicy {
  double c = 0.02;                 // window exponent, must be <= 1/25
  std::optional<u64> fixed_h = {}; // override the exp-formula initial h
  double growth = 2.0;             // h multiplier on failure
  u64 max_h = 0;                   // 0 = floor(sqrt(n)) at use site
  SearchMode mode = SearchMode::prime_order;
  bool verify_inline = true;
  bool unsafe_lemma = false;       // drop the prime-power path guards
};

/// A_n invariably generated by an element of order p together with one of
/// order r: witnesses are n/p disjoint p-cycles, and t disjoint r-cycles
/// plus u fixed points.
struct PrimeOrderPair {
  u64 n = 0, p = 0, r = 0, t = 0, u = 0;
  bool operator==(const PrimeOrderPair&) const = default;
};

/// A_n invariably generated by an element of order p^a together with one
/// of prime order r, with p^a | n and r < n-2 < n <= r + p^a.
struct PrimePowerPair {
  u64 n = 0, p = 0;
  int a = 0;
  u64 r = 0;
  bool operator==(const PrimePowerPair&) const = default;
};

enum class FlagReason {
  no_semiprime_found,
  conditions_unsatisfiable_in_budget,
  budget_exhausted,
};

std::string flag_reason_name(FlagReason reason);
std::optional<FlagReason> flag_reason_from_name(const std::string& name);

struct Flagged {
  u64 n = 0;
  FlagReason reason = FlagReason::budget_exhausted;
  std::string trace;  // short summary of what the search covered
  bool operator==(const Flagged& o) const { return n == o.n && reason == o.reason; }
};

using Certificate = std::variant<PrimeOrderPair, PrimePowerPair, Flagged>;

/// Per-condition evaluation of the sufficiency test for the pair (p, r).
struct ConditionReport {
  u64 t = 0, u = 0;
  bool r_above_sqrt_2n = false;  // side requirement r > sqrt(2n)
  bool u_below_r = false;        // side requirement u < r
  bool not_prime_power = false;       // (i)
  bool not_repunit = false;           // (ii)
  bool u_at_least_3 = false;          // (iii)
  bool t_coprime_to_n = false;        // (iv)
  bool no_covered_multiple = false;   // (v)

  bool all_pass() const {
    return r_above_sqrt_2n && u_below_r && not_prime_power && not_repunit &&
           u_at_least_3 && t_coprime_to_n && no_covered_multiple;
  }
};

ConditionReport check_conditions(u64 n, u64 p, u64 r);

/// Decides whether some multiple of p in (0, n) is representable as
/// a*r + b with 0 <= a <= t, 0 <= b <= u. Runs in O(t) by scanning the
/// intervals [j*r, j*r + u]; returns true when no such multiple exists.
bool condition_v_fast(u64 n, u64 p, u64 r, u64 t, u64 u);

std::optional<PrimeOrderPair> find_prime_order_cert(u64 n, const SearchPolicy& policy);
std::optional<PrimePowerPair> find_prime_power_cert(u64 n, const SearchPolicy& policy);

Certificate certify(u64 n, const SearchPolicy& policy);

/// Independent re-validation: primality retested, t and u recomputed, the
/// covering condition re-checked by direct enumeration of the multiples
/// of p. Throws on Flagged input.
bool verify(const Certificate& cert);

/// Whether A_n contains an even-parity element of order exactly p^a.
bool even_element_of_order_exists(u64 n, u64 p, int a);

}  // namespace invgen
