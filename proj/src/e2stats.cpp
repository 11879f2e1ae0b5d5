#include "invgen/e2stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace invgen {

u64 count_e2_in_interval(u64 x, u64 h, u64 p1_lo, u64 p1_hi) {
  if (x < 2 || h < 1) throw std::invalid_argument("count_e2_in_interval: x >= 2, h >= 1");
  if (p1_lo < 2) p1_lo = 2;
  if (p1_lo > p1_hi) return 0;
  u64 count = 0;
  for (u64 p1 = p1_lo; p1 <= p1_hi; ++p1) {
    if (!is_prime(p1)) continue;
    u64 lo2 = (x + p1 - 1) / p1;
    u64 hi2 = (x + h) / p1;
    for (u64 p2 = std::max<u64>(lo2, 2); p2 <= hi2; ++p2) {
      if (is_prime(p2)) ++count;
    }
  }
  return count;
}

double main_term(double h, double P1, double c) {
  if (P1 < 16 || c <= 0 || c >= 0.5)
    throw std::invalid_argument("main_term: P1 >= 16 and 0 < c < 1/2 required");
  u64 lo = (u64)std::ceil(std::pow(P1, 1.0 - 2.0 * c));
  u64 hi = (u64)std::floor(std::pow(P1, 1.0 - c));
  if (lo > hi) return 0.0;
  if (lo < 2) lo = 2;
  return h * mertens_lambda_sum(lo, hi);
}

u64 h_policy(u64 n) {
  if (n < 16) throw std::invalid_argument("h_policy: n >= 16 required");
  double ln = std::log((double)n);
  double h = std::exp(std::sqrt(ln * std::log(ln)));
  return std::max<u64>(64, (u64)std::ceil(h));
}

E2Summary scan_intervals(const E2Config& cfg) {
  if (cfg.X < 2 || cfg.h < 1 || cfg.c <= 0 || cfg.c >= 0.5)
    throw std::invalid_argument("scan_intervals: invalid config");
  E2Summary summary;
  double logX = std::log((double)cfg.X);
  double lo_range = std::pow(logX, 2.0);
  if ((double)cfg.h < lo_range || (double)cfg.h > std::pow((double)cfg.X, 0.1))
    summary.warnings.push_back("h outside the intended range [(log X)^C, X^(1/10)]");
  u64 p1_lo, p1_hi;
  if (cfg.p1_window) {
    p1_lo = cfg.p1_window->first;
    p1_hi = cfg.p1_window->second;
  } else {
    p1_lo = (u64)std::floor(std::pow((double)cfg.h, 1.0 - 2.0 * cfg.c) / 2.0);
    p1_hi = (u64)std::floor(std::pow((double)cfg.h, 1.0 - cfg.c));
  }
  if (p1_lo < 2) p1_lo = 2;

  std::vector<u64> xs;
  if (std::holds_alternative<SampleAll>(cfg.sample)) {
    if (cfg.X > 1000000000ull)
      throw std::length_error("scan_intervals: all-mode range exceeds 10^9 evaluations");
    for (u64 x = 2; x <= cfg.X; ++x) xs.push_back(x);
  } else if (auto* r = std::get_if<SampleRandom>(&cfg.sample)) {
    std::mt19937_64 rng(r->seed);
    std::uniform_int_distribution<u64> dist(2, cfg.X);
    for (u64 i = 0; i < r->count; ++i) xs.push_back(dist(rng));
  } else {
    auto& s = std::get<SampleStride>(cfg.sample);
    if (s.stride < 1) throw std::invalid_argument("scan_intervals: stride >= 1");
    for (u64 x = 2; x <= cfg.X; x += s.stride) xs.push_back(x);
  }

  double mt = cfg.h >= 16 ? main_term((double)cfg.h, (double)cfg.h, cfg.c) : 0.0;
  double threshold = cfg.c * (double)cfg.h / logX;
  u64 deficient = 0;
  for (u64 x : xs) {
    E2IntervalStat st;
    st.x = x;
    st.count = count_e2_in_interval(x, cfg.h, p1_lo, p1_hi);
    st.main_term = mt;
    st.deficient = (double)st.count < threshold;
    if (st.deficient) ++deficient;
    summary.stats.push_back(st);
  }
  summary.deficient_fraction =
      xs.empty() ? 0.0 : (double)deficient / (double)xs.size();
  summary.reference_ratio = std::pow((double)cfg.h, -cfg.c);
  return summary;
}

u64 smooth_count(u64 X, u64 B) {
  if (X < 1 || B < 2) throw std::invalid_argument("smooth_count: X >= 1, B >= 2");
  const std::vector<u64>& primes = base_primes(B);
  std::vector<u64> ps;
  for (u64 p : primes)
    if (p <= B) ps.push_back(p);
  // DFS over products of primes <= B, counting each value <= X once.
  u64 count = 0;
  struct Frame {
    u64 value;
    size_t idx;
  };
  std::vector<Frame> stack{{1, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    ++count;  // f.value itself is smooth
    for (size_t i = f.idx; i < ps.size(); ++i) {
      if (ps[i] > X / f.value) break;
      stack.push_back({f.value * ps[i], i});
    }
  }
  return count;
}

std::string e2_csv(const E2Summary& summary) {
  std::ostringstream os;
  os << "x,count,main_term,deficient\n";
  for (const E2IntervalStat& st : summary.stats) {
    os << st.x << "," << st.count << "," << st.main_term << ","
       << (st.deficient ? 1 : 0) << "\n";
  }
  return os.str();
}

}  // namespace invgen
