#include "invgen/kummer.hpp"

#include <stdexcept>

namespace invgen {

u64 DigitVector::value() const {
  u64 v = 0, mult = 1;
  for (u64 d : digits) {
    v += d * mult;
    mult *= base;
  }
  return v;
}

DigitVector to_digits(u64 n, u64 base) {
  if (base < 2) throw std::invalid_argument("to_digits: base >= 2 required");
  DigitVector dv;
  dv.base = base;
  if (n == 0) {
    dv.digits.push_back(0);
    return dv;
  }
  while (n > 0) {
    dv.digits.push_back(n % base);
    n /= base;
  }
  return dv;
}

namespace {

// Every base-p digit of i is <= the matching digit of n.
bool dominated(u64 i, u64 n, u64 p) {
  while (i > 0 || n > 0) {
    if (i % p > n % p) return false;
    i /= p;
    n /= p;
  }
  return true;
}

}  // namespace

bool divides_binomial(u64 p, u64 n, u64 i) {
  if (i > n) throw std::invalid_argument("divides_binomial: i out of range");
  return !dominated(i, n, p);
}

u64 dominated_count(u64 n, u64 p) {
  u64 count = 1;
  if (n == 0) return 1;
  while (n > 0) {
    count *= n % p + 1;
    n /= p;
  }
  return count;
}

bool binomial_cover_check(u64 n, u64 p1, u64 p2) {
  if (n < 2) throw std::invalid_argument("binomial_cover_check: n >= 2 required");
  // The uncovered i are those dominated in both bases; the cover holds iff
  // that intersection is exactly {0, n}. Walk the smaller domination set
  // (it is a digit-wise product set) and test each member against the
  // other base.
  u64 enum_base = p1, other = p2;
  if (dominated_count(n, p2) < dominated_count(n, p1)) {
    enum_base = p2;
    other = p1;
  }
  if (dominated_count(n, enum_base) > 4000000 && n <= 1000000) {
    for (u64 i = 1; i < n; ++i)
      if (dominated(i, n, p1) && dominated(i, n, p2)) return false;
    return true;
  }
  std::vector<u64> digits = to_digits(n, enum_base).digits;
  std::vector<u64> choice(digits.size(), 0);
  // Odometer over digit choices 0..d_j.
  for (;;) {
    u64 i = 0, mult = 1;
    for (size_t j = 0; j < digits.size(); ++j) {
      i += choice[j] * mult;
      mult *= enum_base;
    }
    if (i != 0 && i != n && dominated(i, n, other)) return false;
    size_t j = 0;
    while (j < digits.size() && choice[j] == digits[j]) choice[j++] = 0;
    if (j == digits.size()) break;
    ++choice[j];
  }
  return true;
}

}  // namespace invgen
