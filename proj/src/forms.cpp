#include "invgen/forms.hpp"

#include <cmath>
#include <optional>
#include <unordered_set>

namespace invgen {

namespace {

// 1 + q + ... + q^(d-1), or nullopt on overflow past 2^63.
std::optional<u64> repunit_value(u64 q, int d) {
  unsigned __int128 value = 0, power = 1;
  const unsigned __int128 kCap = (unsigned __int128)1 << 63;
  for (int i = 0; i < d; ++i) {
    value += power;
    if (value >= kCap) return std::nullopt;
    power *= q;
    if (power >= kCap && i + 1 < d) return std::nullopt;
  }
  return (u64)value;
}

u64 isqrt(u64 n) {
  u64 r = (u64)std::sqrt((double)n);
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 iroot_k(u64 n, int k) {
  u64 r = (u64)std::llround(std::pow((double)n, 1.0 / k));
  if (r < 1) r = 1;
  auto pow_gt = [&](u64 base) {
    unsigned __int128 v = 1;
    for (int i = 0; i < k; ++i) {
      v *= base;
      if (v > (unsigned __int128)n) return true;
    }
    return false;
  };
  while (r > 1 && pow_gt(r)) --r;
  while (!pow_gt(r + 1)) ++r;
  return r;
}

}  // namespace

std::vector<RepunitWitness> repunit_decompose(u64 n) {
  std::vector<RepunitWitness> out;
  if (n < 7) return out;
  // d = 3: solve q^2 + q + 1 = n by the quadratic formula, then scan +-1.
  {
    u64 s = isqrt(4 * n - 3);
    u64 q0 = s >= 1 ? (s - 1) / 2 : 0;
    for (u64 q = q0 > 2 ? q0 - 1 : 2; q <= q0 + 1; ++q) {
      if (auto v = repunit_value(q, 3); v && *v == n)
        out.push_back({q, 3, n});
    }
  }
  // d >= 4: q is close to the (d-1)-th root of n.
  for (int d = 4; d <= 63; ++d) {
    auto min_v = repunit_value(2, d);
    if (!min_v || *min_v > n) break;
    u64 q0 = iroot_k(n, d - 1);
    for (u64 q = q0 > 2 ? q0 - 1 : 2; q <= q0 + 1; ++q) {
      if (auto v = repunit_value(q, d); v && *v == n)
        out.push_back({q, d, n});
    }
  }
  return out;
}

u64 count_repunits_upto(u64 X) {
  std::unordered_set<u64> values;
  for (int d = 3; d <= 63; ++d) {
    auto min_v = repunit_value(2, d);
    if (!min_v || *min_v > X) break;
    for (u64 q = 2;; ++q) {
      auto v = repunit_value(q, d);
      if (!v || *v > X) break;
      values.insert(*v);
    }
  }
  return values.size();
}

}  // namespace invgen
