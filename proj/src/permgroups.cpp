#include "invgen/permgroups.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace invgen {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= (int)images_.size() || seen[v])
      throw std::invalid_argument("Permutation: images are not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (int p = 0; p < degree(); ++p)
    if (images_[p] != p) return false;
  return true;
}

bool Permutation::is_even() const {
  std::vector<char> seen(images_.size(), 0);
  int cycles = 0;
  for (int p = 0; p < degree(); ++p) {
    if (seen[p]) continue;
    ++cycles;
    for (int q = p; !seen[q]; q = images_[q]) seen[q] = 1;
  }
  return ((degree() - cycles) & 1) == 0;
}

Permutation Permutation::operator*(const Permutation& other) const {
  std::vector<int> img(images_.size());
  for (int p = 0; p < degree(); ++p) img[p] = images_[other.images_[p]];
  Permutation out;
  out.images_ = std::move(img);
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> img(images_.size());
  for (int p = 0; p < degree(); ++p) img[images_[p]] = p;
  Permutation out;
  out.images_ = std::move(img);
  return out;
}

CycleType::CycleType(std::vector<u64> p) : parts(std::move(p)) {
  for (u64 v : parts)
    if (v < 1) throw std::invalid_argument("CycleType: parts must be positive");
  std::sort(parts.begin(), parts.end(), std::greater<u64>());
}

u64 CycleType::degree() const {
  u64 s = 0;
  for (u64 v : parts) s += v;
  return s;
}

u64 CycleType::order() const {
  u64 l = 1;
  for (u64 v : parts) l = std::lcm(l, v);
  return l;
}

bool CycleType::is_even() const {
  u64 transpositions = 0;
  for (u64 v : parts) transpositions += v - 1;
  return (transpositions & 1) == 0;
}

std::string CycleType::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) os << ",";
    os << parts[i];
  }
  return os.str();
}

CycleType parse_cycle_type(const std::string& text) {
  std::vector<u64> parts;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ',')) {
    std::istringstream ts(token);
    u64 v;
    while (ts >> v) parts.push_back(v);
  }
  if (parts.empty()) throw std::invalid_argument("parse_cycle_type: empty input");
  return CycleType(std::move(parts));
}

namespace {

// Unsigned bignum just large enough to compare group orders with n!/2.
struct BigNat {
  std::vector<std::uint32_t> limbs{1};  // little endian, no leading zeros

  void mul_u32(std::uint32_t m) {
    std::uint64_t carry = 0;
    for (auto& limb : limbs) {
      std::uint64_t v = (std::uint64_t)limb * m + carry;
      limb = (std::uint32_t)v;
      carry = v >> 32;
    }
    if (carry) limbs.push_back((std::uint32_t)carry);
  }

  void div2() {
    std::uint32_t carry = 0;
    for (size_t i = limbs.size(); i-- > 0;) {
      std::uint32_t v = limbs[i];
      limbs[i] = (v >> 1) | (carry << 31);
      carry = v & 1;
    }
    while (limbs.size() > 1 && limbs.back() == 0) limbs.pop_back();
  }

  bool operator==(const BigNat&) const = default;
};

BigNat half_factorial(int n) {
  BigNat f;
  for (int i = 2; i <= n; ++i) f.mul_u32((std::uint32_t)i);
  if (n >= 2) f.div2();
  return f;
}

}  // namespace

GroupBSGS::GroupBSGS(const std::vector<Permutation>& gens, int n) : n_(n) {
  if (n < 1 || n > 64) throw std::invalid_argument("GroupBSGS: degree must be in [1, 64]");
  if (gens.empty()) throw std::invalid_argument("GroupBSGS: generator list is empty");
  for (const Permutation& g : gens) {
    if (g.degree() != n) throw std::invalid_argument("GroupBSGS: degree mismatch");
    if (!g.is_identity()) add_generator(g);
  }
  for (size_t i = 0; i < base_.size(); ++i) rebuild_orbit(i);
  // The transversal-word map is injective, so the orbit-size product never
  // exceeds the group order. A cheap randomized sift phase therefore
  // *proves* G = A_n whenever the product reaches n!/2 (the maximum for
  // even generators); only proper subgroups need the full deterministic
  // completion.
  if (!sgens_.empty()) {
    bool all_even = true;
    for (const auto& [s, level] : sgens_)
      if (!s.is_even()) all_even = false;
    if (all_even) random_boost(gens);
    if (!all_even || !orbit_product_is_half_factorial()) schreier_sims();
  }
}

void GroupBSGS::random_boost(const std::vector<Permutation>& gens) {
  // Product-replacement random walk with a fixed seed: the resulting
  // structure is a deterministic function of the generators.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::vector<Permutation> pool;
  while (pool.size() < 6)
    pool.push_back(gens[pool.size() % gens.size()]);
  Permutation acc = Permutation::identity(n_);
  int consecutive = 0;
  for (int step = 0; step < 2000 && consecutive < 20; ++step) {
    size_t i = rng() % pool.size(), j = rng() % pool.size();
    if (i == j) j = (j + 1) % pool.size();
    pool[i] = pool[i] * pool[j];
    acc = acc * pool[i];
    auto [res, lev] = strip(acc, 0);
    if (res.is_identity()) {
      ++consecutive;
      continue;
    }
    consecutive = 0;
    if (lev == base_.size()) append_base_point(res);
    sgens_.push_back({std::move(res), lev});
    for (size_t k = 0; k <= lev && k < base_.size(); ++k) rebuild_orbit(k);
    if (orbit_product_is_half_factorial()) return;
  }
}

bool GroupBSGS::orbit_product_is_half_factorial() const {
  BigNat order;
  for (const auto& orb : orbit_) order.mul_u32((std::uint32_t)orb.size());
  return order == half_factorial(n_);
}

void GroupBSGS::append_base_point(const Permutation& g) {
  int b = -1;
  for (int p = 0; p < n_; ++p) {
    if (g[p] != p) {
      b = p;
      break;
    }
  }
  base_.push_back(b);
  orbit_.emplace_back();
  reps_.emplace_back();
  in_orbit_.emplace_back();
}

void GroupBSGS::add_generator(Permutation g) {
  // Every generator must move some base point; extend the base if not.
  size_t level = 0;
  while (level < base_.size() && g[base_[level]] == base_[level]) ++level;
  if (level == base_.size()) append_base_point(g);
  sgens_.push_back({std::move(g), level});
}

void GroupBSGS::rebuild_orbit(size_t level) {
  int b = base_[level];
  orbit_[level].clear();
  in_orbit_[level].assign(n_, 0);
  reps_[level].assign(n_, Permutation());
  orbit_[level].push_back(b);
  in_orbit_[level][b] = 1;
  reps_[level][b] = Permutation::identity(n_);
  for (size_t i = 0; i < orbit_[level].size(); ++i) {
    int p = orbit_[level][i];
    for (const auto& [s, slevel] : sgens_) {
      if (slevel < level) continue;  // does not fix all earlier base points
      int q = s[p];
      if (!in_orbit_[level][q]) {
        in_orbit_[level][q] = 1;
        reps_[level][q] = s * reps_[level][p];
        orbit_[level].push_back(q);
      }
    }
  }
}

std::pair<Permutation, size_t> GroupBSGS::strip(Permutation g, size_t from_level) const {
  for (size_t lev = from_level; lev < base_.size(); ++lev) {
    int img = g[base_[lev]];
    if (!in_orbit_[lev][img]) return {std::move(g), lev};
    g = reps_[lev][img].inverse() * g;
  }
  return {std::move(g), base_.size()};
}

void GroupBSGS::schreier_sims() {
  for (size_t i = 0; i < base_.size(); ++i) rebuild_orbit(i);
  // Verify levels deepest-first: a level is done when all its Schreier
  // generators strip to the identity through the deeper levels.
  for (int lev = (int)base_.size() - 1; lev >= 0;) {
    bool added = false;
    for (size_t oi = 0; oi < orbit_[lev].size() && !added; ++oi) {
      int p = orbit_[lev][oi];
      for (const auto& [s, slevel] : sgens_) {
        if (slevel < (size_t)lev) continue;
        Permutation sg = reps_[lev][s[p]].inverse() * (s * reps_[lev][p]);
        if (sg.is_identity()) continue;
        auto [res, j] = strip(std::move(sg), lev + 1);
        if (res.is_identity()) continue;
        // New strong generator for level j; levels deeper than j keep
        // their verified status, shallower orbits must be rebuilt.
        if (j == base_.size()) append_base_point(res);
        sgens_.push_back({std::move(res), j});
        for (size_t k = 0; k <= j && k < base_.size(); ++k) rebuild_orbit(k);
        lev = (int)j;
        added = true;
        break;
      }
    }
    if (!added) --lev;
  }
}

u64 GroupBSGS::order_u64() const {
  unsigned __int128 order = 1;
  for (const auto& orb : orbit_) {
    order *= orb.size();
    if (order > (unsigned __int128)UINT64_MAX)
      throw std::overflow_error("GroupBSGS: order exceeds 2^64");
  }
  return (u64)order;
}

bool GroupBSGS::is_full_alternating() const {
  return orbit_product_is_half_factorial();
}

bool GroupBSGS::contains(const Permutation& g) const {
  Permutation res = g;
  for (size_t lev = 0; lev < base_.size(); ++lev) {
    int img = res[base_[lev]];
    if (!in_orbit_[lev][img]) return false;
    res = reps_[lev][img].inverse() * res;
  }
  return res.is_identity();
}

u64 group_order(const std::vector<Permutation>& gens, int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("group_order: n must be in [1, 16]");
  return GroupBSGS(gens, n).order_u64();
}

bool is_alternating(const std::vector<Permutation>& gens, int n) {
  for (const Permutation& g : gens)
    if (!g.is_even())
      throw std::invalid_argument("is_alternating: all generators must be even");
  return GroupBSGS(gens, n).is_full_alternating();
}

Permutation canonical_of_type(const CycleType& ct) {
  int n = (int)ct.degree();
  std::vector<int> img(n);
  int next = 0;
  for (u64 len : ct.parts) {
    for (u64 i = 0; i < len; ++i)
      img[next + (int)i] = next + (int)((i + 1) % len);
    next += (int)len;
  }
  return Permutation(std::move(img));
}

u64 conjugacy_class_size(const CycleType& ct) {
  // n! / (prod l^(m_l) * m_l!), in floating point, saturated.
  double log_size = std::lgamma((double)ct.degree() + 1.0);
  u64 run_len = 0, prev = 0;
  for (u64 part : ct.parts) {
    log_size -= std::log((double)part);
    if (part == prev)
      ++run_len;
    else {
      run_len = 1;
      prev = part;
    }
    log_size -= std::log((double)run_len);
  }
  double size = std::exp(log_size);
  if (size >= 9.0e18) return u64(1) << 63;
  return (u64)std::llround(size);
}

namespace {

struct ClassEnumerator {
  int n;
  std::vector<std::pair<u64, int>> part_counts;  // (length, count), desc
  std::vector<int> images;
  std::vector<char> used;
  const std::function<bool(const Permutation&)>* fn;
  bool stopped = false;

  bool emit() { return (*fn)(Permutation(std::vector<int>(images))); }

  void rec() {
    if (stopped) return;
    int s = -1;
    for (int p = 0; p < n; ++p) {
      if (!used[p]) {
        s = p;
        break;
      }
    }
    if (s < 0) {
      if (!emit()) stopped = true;
      return;
    }
    for (auto& [len, count] : part_counts) {
      if (count == 0) continue;
      --count;
      used[s] = 1;
      extend_cycle(s, s, len - 1);
      used[s] = 0;
      ++count;
      if (stopped) return;
    }
  }

  // Pick the remaining points of the cycle started at leader; prev is the
  // last chosen point, k more to pick.
  void extend_cycle(int leader, int prev, u64 k) {
    if (stopped) return;
    if (k == 0) {
      images[prev] = leader;
      rec();
      return;
    }
    for (int q = 0; q < n; ++q) {
      if (used[q] || q == leader) continue;
      used[q] = 1;
      images[prev] = q;
      extend_cycle(leader, q, k - 1);
      used[q] = 0;
      if (stopped) return;
    }
  }
};

}  // namespace

void enumerate_class(const CycleType& ct, const std::function<bool(const Permutation&)>& fn) {
  ClassEnumerator en;
  en.n = (int)ct.degree();
  for (u64 part : ct.parts) {
    if (!en.part_counts.empty() && en.part_counts.back().first == part)
      en.part_counts.back().second++;
    else
      en.part_counts.push_back({part, 1});
  }
  en.images.assign(en.n, -1);
  en.used.assign(en.n, 0);
  en.fn = &fn;
  en.rec();
}

Permutation random_of_type(const CycleType& ct, std::mt19937_64& rng) {
  int n = (int)ct.degree();
  std::vector<int> points(n);
  std::iota(points.begin(), points.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> dist(0, i);
    std::swap(points[i], points[dist(rng)]);
  }
  std::vector<int> img(n);
  int next = 0;
  for (u64 len : ct.parts) {
    for (u64 i = 0; i < len; ++i)
      img[points[next + (int)i]] = points[next + (int)((i + 1) % len)];
    next += (int)len;
  }
  return Permutation(std::move(img));
}

std::vector<CycleType> even_types_of_prime_power_order(u64 n, u64 p, int a) {
  std::vector<u64> powers;  // p^a down to p
  {
    unsigned __int128 v = 1;
    for (int i = 0; i < a; ++i) v *= p;
    if (v > n) return {};
    for (int i = a; i >= 1; --i) {
      powers.push_back((u64)v);
      v /= p;
    }
  }
  std::vector<CycleType> out;
  std::vector<u64> parts;
  auto rec = [&](auto&& self, size_t idx, u64 remaining) -> void {
    if (idx == powers.size()) {
      // remainder is fixed points
      std::vector<u64> full = parts;
      for (u64 i = 0; i < remaining; ++i) full.push_back(1);
      CycleType ct(std::move(full));
      if (ct.is_even()) out.push_back(std::move(ct));
      return;
    }
    u64 v = powers[idx];
    u64 max_count = remaining / v;
    for (u64 c = 0; c <= max_count; ++c) {
      if (idx == 0 && c == 0) continue;  // order must be exactly p^a
      for (u64 i = 0; i < c; ++i) parts.push_back(v);
      self(self, idx + 1, remaining - c * v);
      for (u64 i = 0; i < c; ++i) parts.pop_back();
    }
  };
  rec(rec, 0, n);
  return out;
}

Verdict invariably_generates(u64 n, const CycleType& ct1, const CycleType& ct2,
                             const OracleMode& mode) {
  if (n < 5) throw std::invalid_argument("invariably_generates: n >= 5 required");
  if (ct1.degree() != n || ct2.degree() != n)
    throw std::invalid_argument("invariably_generates: cycle type degree mismatch");
  if (!ct1.is_even() || !ct2.is_even())
    throw std::invalid_argument("invariably_generates: cycle types must be even");
  if (ct1.order() < 2 || ct2.order() < 2)
    throw std::invalid_argument("invariably_generates: orders must exceed 1");
  Verdict verdict;
  if (std::holds_alternative<ExhaustiveMode>(mode)) {
    if (n > 12) throw std::length_error("invariably_generates: exhaustive mode needs n <= 12");
    if (conjugacy_class_size(ct1) > 10000000ull)
      throw std::length_error("invariably_generates: class of ct1 exceeds 10^7");
    Permutation g2 = canonical_of_type(ct2);
    verdict.kind = VerdictKind::proven_true;
    enumerate_class(ct1, [&](const Permutation& g1) {
      ++verdict.pairs_tested;
      if (!GroupBSGS({g1, g2}, (int)n).is_full_alternating()) {
        verdict.kind = VerdictKind::refuted;
        verdict.witness = {g1, g2};
        return false;
      }
      return true;
    });
    return verdict;
  }
  const auto& sm = std::get<SampleMode>(mode);
  std::mt19937_64 rng(sm.seed);
  verdict.seed = sm.seed;
  verdict.kind = VerdictKind::sampled_no_refutation;
  for (u64 i = 0; i < sm.samples; ++i) {
    Permutation g1 = random_of_type(ct1, rng);
    Permutation g2 = random_of_type(ct2, rng);
    ++verdict.pairs_tested;
    if (!GroupBSGS({g1, g2}, (int)n).is_full_alternating()) {
      verdict.kind = VerdictKind::refuted;
      verdict.witness = {g1, g2};
      return verdict;
    }
  }
  return verdict;
}

std::vector<std::pair<CycleType, CycleType>> cert_to_witnesses(const Certificate& cert) {
  if (std::holds_alternative<Flagged>(cert))
    throw std::invalid_argument("cert_to_witnesses: flagged certificate has no witnesses");
  if (!verify(cert))
    throw std::invalid_argument("cert_to_witnesses: certificate does not verify");
  std::vector<std::pair<CycleType, CycleType>> out;
  if (const auto* po = std::get_if<PrimeOrderPair>(&cert)) {
    std::vector<u64> parts1(po->n / po->p, po->p);
    std::vector<u64> parts2(po->t, po->r);
    for (u64 i = 0; i < po->u; ++i) parts2.push_back(1);
    out.push_back({CycleType(std::move(parts1)), CycleType(std::move(parts2))});
    return out;
  }
  const auto& pp = std::get<PrimePowerPair>(cert);
  std::vector<CycleType> first = even_types_of_prime_power_order(pp.n, pp.p, pp.a);
  std::vector<CycleType> second = even_types_of_prime_power_order(pp.n, pp.r, 1);
  for (const CycleType& a : first)
    for (const CycleType& b : second) out.push_back({a, b});
  return out;
}

}  // namespace invgen
