#include "invgen/primes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace invgen {

u64 mulmod(u64 a, u64 b, u64 m) {
  return u64((unsigned __int128)a * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 x = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) x = mulmod(x, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return x;
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  a %= n;
  if (a == 0) return true;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  int s = 0;
  u64 d = n - 1;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This fixed witness basis is exact for all n < 3.3 * 10^24.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (!miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

namespace {

std::mutex g_base_mutex;
std::vector<u64> g_base_primes;
u64 g_base_limit = 0;

void grow_base_primes_locked(u64 limit) {
  // Simple sieve up to limit; rebuilt from scratch when grown.
  std::vector<bool> composite(limit + 1, false);
  std::vector<u64> primes;
  for (u64 i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }
  g_base_primes = std::move(primes);
  g_base_limit = limit;
}

}  // namespace

const std::vector<u64>& base_primes(u64 limit) {
  std::lock_guard<std::mutex> lock(g_base_mutex);
  if (limit > g_base_limit) grow_base_primes_locked(std::max<u64>(limit, 1 << 16));
  return g_base_primes;
}

std::vector<bool> sieve_segment(u64 lo, u64 hi) {
  if (lo < 2 || lo > hi) throw std::invalid_argument("sieve_segment: need 2 <= lo <= hi");
  if (hi > kMaxInteger) throw std::invalid_argument("sieve_segment: hi exceeds 2^62");
  if (hi - lo > 1000000000ull) throw std::length_error("sieve_segment: range wider than 10^9");
  u64 root = u64(std::sqrt((double)hi)) + 2;
  while (root * root > hi) --root;
  const std::vector<u64>& primes = base_primes(root);
  std::vector<bool> flags(hi - lo + 1, true);
  for (u64 p : primes) {
    if (p > root) break;
    u64 start = std::max(p * p, (lo + p - 1) / p * p);
    for (u64 m = start; m <= hi; m += p) flags[m - lo] = false;
  }
  return flags;
}

namespace {

// Integer k-th root with correction scan.
u64 iroot(u64 n, int k) {
  if (k == 1) return n;
  u64 r = (u64)std::llround(std::pow((double)n, 1.0 / k));
  if (r < 1) r = 1;
  while (r > 1) {
    // shrink while r^k > n (overflow counts as too big)
    unsigned __int128 v = 1;
    bool over = false;
    for (int i = 0; i < k; ++i) {
      v *= r;
      if (v > (unsigned __int128)n) { over = true; break; }
    }
    if (over) --r; else break;
  }
  for (;;) {
    unsigned __int128 v = 1;
    bool over = false;
    for (int i = 0; i < k; ++i) {
      v *= (r + 1);
      if (v > (unsigned __int128)n) { over = true; break; }
    }
    if (over) break;
    ++r;
  }
  return r;
}

}  // namespace

std::optional<std::pair<u64, int>> prime_power_decompose(u64 n) {
  if (n < 2) throw std::invalid_argument("prime_power_decompose: n >= 2 required");
  for (int a = 62; a >= 1; --a) {
    u64 p = iroot(n, a);
    if (p < 2) continue;
    unsigned __int128 v = 1;
    for (int i = 0; i < a; ++i) v *= p;
    if (v == n && is_prime(p)) return std::make_pair(p, a);
  }
  return std::nullopt;
}

namespace {

u64 pollard_brent(u64 n) {
  // Brent's cycle-finding variant; n odd composite, no factors below 10^6.
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1, q = 1, ys = 0;
    u64 r = 1;
    const u64 m = 128;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && d == 1; k += m) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (d == n) {
      do {
        ys = f(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

FactorMap factorize(u64 n) {
  if (n < 2 || n > kMaxInteger) throw std::invalid_argument("factorize: need 2 <= n <= 2^62");
  FactorMap fm;
  fm.n = n;
  u64 rem = n;
  std::vector<u64> primes_found;
  const u64 kTrialBound = 1000000;
  for (u64 p : base_primes(kTrialBound)) {
    if (p * p > rem) break;
    while (rem % p == 0) {
      primes_found.push_back(p);
      rem /= p;
    }
  }
  if (rem > 1) {
    if (rem <= kTrialBound * kTrialBound && rem != 1) {
      // remaining cofactor below 10^12 with no factor below 10^6 is prime
      primes_found.push_back(rem);
    } else {
      factor_rec(rem, primes_found);
    }
  }
  std::sort(primes_found.begin(), primes_found.end());
  for (u64 p : primes_found) {
    if (!fm.factors.empty() && fm.factors.back().first == p)
      fm.factors.back().second++;
    else
      fm.factors.push_back({p, 1});
  }
  return fm;
}

std::optional<u64> largest_prime_in(u64 lo, u64 hi) {
  if (lo < 2) lo = 2;
  if (lo > hi) return std::nullopt;
  for (u64 r = hi;; --r) {
    if (is_prime(r)) return r;
    if (r == lo) break;
  }
  return std::nullopt;
}

double mertens_lambda_sum(u64 lo, u64 hi, bool primes_only) {
  if (lo < 2 || lo > hi || hi > 1000000000ull)
    throw std::invalid_argument("mertens_lambda_sum: need 2 <= lo <= hi <= 10^9");
  double sum = 0.0;
  const u64 kChunk = 1 << 22;
  for (u64 a = lo; a <= hi; a += kChunk) {
    u64 b = std::min(hi, a + kChunk - 1);
    std::vector<bool> flags = sieve_segment(a, b);
    for (u64 m = a; m <= b; ++m) {
      if (flags[m - a]) sum += std::log((double)m) / (double)m;
    }
  }
  if (!primes_only) {
    u64 root = u64(std::sqrt((double)hi)) + 2;
    for (u64 p : base_primes(root)) {
      double lp = std::log((double)p);
      unsigned __int128 pk = (unsigned __int128)p * p;
      while (pk <= hi) {
        if (pk >= lo) sum += lp / (double)(u64)pk;
        pk *= p;
      }
    }
  }
  return sum;
}

}  // namespace invgen
