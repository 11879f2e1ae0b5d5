#include "invgen/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "invgen/e2stats.hpp"
#include "invgen/forms.hpp"

namespace invgen {

std::string flag_reason_name(FlagReason reason) {
  switch (reason) {
    case FlagReason::no_semiprime_found: return "no-semiprime-found";
    case FlagReason::conditions_unsatisfiable_in_budget:
      return "conditions-unsatisfiable-in-budget";
    case FlagReason::budget_exhausted: return "budget-exhausted";
  }
  return "unknown";
}

std::optional<FlagReason> flag_reason_from_name(const std::string& name) {
  if (name == "no-semiprime-found") return FlagReason::no_semiprime_found;
  if (name == "conditions-unsatisfiable-in-budget")
    return FlagReason::conditions_unsatisfiable_in_budget;
  if (name == "budget-exhausted") return FlagReason::budget_exhausted;
  return std::nullopt;
}

namespace {

u64 isqrt_u64(u64 n) {
  u64 r = (u64)std::sqrt((double)n);
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::optional<u64> prime_power_value(u64 p, int a) {
  unsigned __int128 v = 1;
  for (int i = 0; i < a; ++i) {
    v *= p;
    if (v > kMaxInteger) return std::nullopt;
  }
  return (u64)v;
}

}  // namespace

bool condition_v_fast(u64 n, u64 p, u64 r, u64 t, u64 u) {
  if (r == 0 || t != n / r || u != n - t * r || u >= r || n % p != 0)
    throw std::invalid_argument("condition_v_fast: inconsistent parameters");
  // m in (0, n) is representable as a*r + b, 0 <= a <= t, 0 <= b <= u,
  // exactly when m mod r <= u. Scan each residue interval for a multiple
  // of p.
  for (u64 j = 0; j <= t; ++j) {
    u64 lo = std::max<u64>(j * r, 1);
    u64 hi = std::min(j * r + u, n - 1);
    if (lo > hi) continue;
    u64 m = (lo + p - 1) / p * p;
    if (m <= hi) return false;
  }
  return true;
}

ConditionReport check_conditions(u64 n, u64 p, u64 r) {
  if (n < 25) throw std::domain_error("check_conditions: prime-order conditions require n >= 25");
  if (p == 0 || n % p != 0) throw std::invalid_argument("check_conditions: p must divide n");
  if (!is_prime(p) || !is_prime(r))
    throw std::invalid_argument("check_conditions: p and r must be prime");
  ConditionReport rep;
  rep.t = n / r;
  rep.u = n - rep.t * r;
  rep.r_above_sqrt_2n = (unsigned __int128)r * r > (unsigned __int128)2 * n;
  rep.u_below_r = rep.u < r;
  rep.not_prime_power = !prime_power_decompose(n).has_value();
  rep.not_repunit = repunit_decompose(n).empty();
  rep.u_at_least_3 = rep.u >= 3;
  rep.t_coprime_to_n = std::gcd(rep.t, n) == 1;
  rep.no_covered_multiple =
      rep.u_below_r ? condition_v_fast(n, p, r, rep.t, rep.u) : false;
  return rep;
}

bool even_element_of_order_exists(u64 n, u64 p, int a) {
  auto pa = prime_power_value(p, a);
  if (!pa || *pa > n) return false;
  if (p != 2) return true;  // a single p^a-cycle is even
  // For p = 2 an order-2^a type needs a 2^a-cycle plus a second
  // even-length cycle to fix parity.
  return n >= *pa + 2;
}

std::optional<PrimePowerPair> find_prime_power_cert(u64 n, const SearchPolicy& policy) {
  if (n < 5) throw std::invalid_argument("find_prime_power_cert: n >= 5 required");
  FactorMap fm = factorize(n);
  struct Cand {
    u64 p;
    int a;
    u64 value;
  };
  std::vector<Cand> cands;
  for (auto [p, e] : fm.factors) {
    int max_a = policy.mode == SearchMode::question1 ? e : 1;
    for (int a = 1; a <= max_a; ++a) {
      auto v = prime_power_value(p, a);
      if (v) cands.push_back({p, a, *v});
    }
  }
  std::sort(cands.begin(), cands.end(),
            [](const Cand& x, const Cand& y) { return x.value > y.value; });
  for (const Cand& cand : cands) {
    u64 lo = n > cand.value ? n - cand.value : 2;
    if (!policy.unsafe_lemma) lo = std::max(lo, n / 2 + 1);
    u64 hi = n - 3;
    auto r = largest_prime_in(lo, hi);
    if (!r) continue;
    if (!policy.unsafe_lemma && !even_element_of_order_exists(n, cand.p, cand.a))
      continue;
    return PrimePowerPair{n, cand.p, cand.a, *r};
  }
  return std::nullopt;
}

namespace {

struct PrimeOrderSearch {
  std::optional<PrimeOrderPair> cert;
  FlagReason reason = FlagReason::budget_exhausted;
  std::string trace;
  bool grew = false;  // whether h grew beyond the initial schedule
};

// Conditions (i), (ii) depend on n alone; (iii), (iv) and the side
// requirements depend on r; (v) additionally on p.
std::optional<PrimeOrderPair> try_candidate(u64 n, u64 r, u64 t,
                                            const std::vector<u64>& prime_divisors,
                                            bool& saw_candidate) {
  if (t != n / r) return std::nullopt;
  u64 u = n - t * r;
  if (u < 3 || u >= r) return std::nullopt;
  if ((unsigned __int128)r * r <= (unsigned __int128)2 * n) return std::nullopt;
  if (std::gcd(t, n) != 1) return std::nullopt;
  saw_candidate = true;
  for (u64 p : prime_divisors) {  // descending
    if (p <= u) break;
    if (condition_v_fast(n, p, r, t, u)) return PrimeOrderPair{n, p, r, t, u};
  }
  return std::nullopt;
}

PrimeOrderSearch prime_order_search(u64 n, const SearchPolicy& policy) {
  PrimeOrderSearch result;
  if (policy.c <= 0 || policy.c > 1.0 / 25.0)
    throw std::invalid_argument("prime_order_search: c must lie in (0, 1/25]");
  if (prime_power_decompose(n) || !repunit_decompose(n).empty()) {
    result.reason = FlagReason::conditions_unsatisfiable_in_budget;
    result.trace = "conditions (i)/(ii) fail for n itself";
    return result;
  }
  FactorMap fm = factorize(n);
  std::vector<u64> prime_divisors;
  for (auto it = fm.factors.rbegin(); it != fm.factors.rend(); ++it)
    prime_divisors.push_back(it->first);

  u64 h0 = policy.fixed_h ? *policy.fixed_h : h_policy(n);
  u64 max_h = policy.max_h ? policy.max_h : isqrt_u64(n);
  max_h = std::min(max_h, isqrt_u64(n));
  bool saw_candidate = false;
  u64 h = h0;
  u64 final_h = h0;
  for (;;) {
    final_h = h;
    u64 window_lo = n > h ? n - h : 2;
    u64 p1_lo = std::max<u64>(
        2, (u64)std::floor(std::pow((double)h, 1.0 - 2.0 * policy.c) / 2.0));
    u64 p1_hi = (u64)std::floor(std::pow((double)h, 1.0 - policy.c));
    // Main pass: semiprimes p1*p2 in [n-h, n-3], p1 ascending, p2
    // descending, with r = p2 and t = p1.
    for (u64 p1 = p1_lo; p1 <= p1_hi; ++p1) {
      if (!is_prime(p1)) continue;
      u64 p2_hi = (n - 3) / p1;
      u64 p2_lo = std::max<u64>(2, (window_lo + p1 - 1) / p1);
      for (u64 p2 = p2_hi; p2 >= p2_lo; --p2) {
        if (p1 * p2 < window_lo || p1 * p2 > n - 3) continue;
        if (!is_prime(p2)) continue;
        if (auto cert = try_candidate(n, p2, p1, prime_divisors, saw_candidate)) {
          result.cert = *cert;
          return result;
        }
        if (p2 == 2) break;
      }
    }
    // t = 1 fallback: a prime r in [n-h, n-3] with r > n/2 on its own.
    u64 r_lo = std::max(window_lo, n / 2 + 1);
    for (u64 r = n - 3; r >= r_lo; --r) {
      if (!is_prime(r)) continue;
      if (auto cert = try_candidate(n, r, 1, prime_divisors, saw_candidate)) {
        result.cert = *cert;
        return result;
      }
      if (r == r_lo) break;
    }
    if (h >= n || h >= max_h) break;
    u64 next = (u64)std::ceil((double)h * policy.growth);
    if (next <= h) break;
    h = std::min(next, max_h);
    result.grew = true;
  }
  std::ostringstream trace;
  trace << "h reached " << final_h << " (max " << max_h << ")";
  result.trace = trace.str();
  bool full_coverage = final_h + 3 >= n;
  if (!saw_candidate)
    result.reason = full_coverage ? FlagReason::no_semiprime_found
                                  : FlagReason::budget_exhausted;
  else
    result.reason = FlagReason::conditions_unsatisfiable_in_budget;
  return result;
}

}  // namespace

std::optional<PrimeOrderPair> find_prime_order_cert(u64 n, const SearchPolicy& policy) {
  if (n < 25) throw std::invalid_argument("find_prime_order_cert: n >= 25 required");
  return prime_order_search(n, policy).cert;
}

Certificate certify(u64 n, const SearchPolicy& policy) {
  if (n < 5) throw std::invalid_argument("certify: n >= 5 required");
  Certificate result = Flagged{n, FlagReason::budget_exhausted, ""};
  if (auto pp = find_prime_power_cert(n, policy)) {
    result = *pp;
  } else if (n >= 25) {
    PrimeOrderSearch search = prime_order_search(n, policy);
    if (search.cert)
      result = *search.cert;
    else
      result = Flagged{n, search.reason, search.trace};
  } else {
    result = Flagged{n, FlagReason::conditions_unsatisfiable_in_budget,
                     "prime-order path requires n >= 25"};
  }
  if (policy.verify_inline && !std::holds_alternative<Flagged>(result) &&
      !policy.unsafe_lemma) {
    if (!verify(result))
      throw std::logic_error("certify: emitted certificate failed verification");
  }
  return result;
}

bool verify(const Certificate& cert) {
  if (const auto* po = std::get_if<PrimeOrderPair>(&cert)) {
    u64 n = po->n, p = po->p, r = po->r, t = po->t, u = po->u;
    if (n < 25 || !is_prime(p) || !is_prime(r)) return false;
    if (p == 0 || n % p != 0) return false;
    if ((unsigned __int128)r * r <= (unsigned __int128)2 * n) return false;
    if (t != n / r || u != n - t * r) return false;
    if (u < 3 || u >= r) return false;
    if (std::gcd(t, n) != 1) return false;
    if (prime_power_decompose(n)) return false;
    if (!repunit_decompose(n).empty()) return false;
    // Condition (v) by direct enumeration of the multiples of p.
    for (u64 m = p; m < n; m += p) {
      if (m % r <= u) return false;
    }
    return true;
  }
  if (const auto* pp = std::get_if<PrimePowerPair>(&cert)) {
    u64 n = pp->n, p = pp->p, r = pp->r;
    int a = pp->a;
    if (n < 5 || a < 1 || !is_prime(p) || !is_prime(r)) return false;
    auto pa = prime_power_value(p, a);
    if (!pa || n % *pa != 0) return false;
    if (!(r < n - 2 && n <= r + *pa)) return false;
    if (r <= n / 2) return false;
    if (!even_element_of_order_exists(n, p, a)) return false;
    // The order-r witness [r, 1, ..., 1] must be even: r odd suffices.
    if (r % 2 == 0) return false;
    return true;
  }
  throw std::invalid_argument("verify: flagged certificates carry no witness");
}

}  // namespace invgen
