#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "invgen/permgroups.hpp"

using namespace invgen;

namespace {

Permutation cycle(int n, std::vector<int> points) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  for (size_t i = 0; i < points.size(); ++i)
    img[points[i]] = points[(i + 1) % points.size()];
  return Permutation(std::move(img));
}

// Naive closure oracle: BFS over products.
u64 closure_order(const std::vector<Permutation>& gens, int n) {
  std::set<std::vector<int>> seen;
  std::vector<Permutation> queue{Permutation::identity(n)};
  seen.insert(queue[0].images());
  while (!queue.empty()) {
    Permutation g = queue.back();
    queue.pop_back();
    for (const Permutation& s : gens) {
      Permutation h = s * g;
      if (seen.insert(h.images()).second) queue.push_back(h);
    }
  }
  return seen.size();
}

Permutation random_even(int n, std::mt19937_64& rng) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(img[i], img[rng() % (i + 1)]);
  Permutation g{std::vector<int>(img)};
  if (!g.is_even()) {
    std::swap(img[0], img[1]);
    g = Permutation(std::move(img));
  }
  return g;
}

// All even cycle types on n points with element order > 1.
std::vector<CycleType> even_types(int n) {
  std::vector<CycleType> out;
  std::vector<u64> parts;
  auto rec = [&](auto&& self, u64 remaining, u64 max_part) -> void {
    if (remaining == 0) {
      CycleType ct{std::vector<u64>(parts)};
      if (ct.is_even() && ct.order() > 1) out.push_back(ct);
      return;
    }
    for (u64 v = std::min<u64>(remaining, max_part); v >= 1; --v) {
      parts.push_back(v);
      self(self, remaining - v, v);
      parts.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

}  // namespace

TEST_CASE("permutation basics") {
  CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
  Permutation g = cycle(5, {0, 1, 2, 3, 4});
  CHECK(g.is_even());
  CHECK(cycle(5, {0, 1}).is_even() == false);
  CHECK((g * g.inverse()).is_identity());
}

TEST_CASE("group_order examples") {
  CHECK(group_order({Permutation::identity(5)}, 5) == 1);
  CHECK(group_order({cycle(5, {0, 1, 2, 3, 4}), cycle(5, {0, 1, 2})}, 5) == 60);
  CHECK(group_order({cycle(7, {1, 3, 5})}, 7) == 3);
  CHECK_THROWS_AS(group_order({Permutation::identity(17)}, 17), std::invalid_argument);
}

TEST_CASE("group_order equals naive closure on random two-generator groups") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 5 + (int)(rng() % 3);  // 5..7
    std::vector<Permutation> gens{random_even(n, rng), random_even(n, rng)};
    REQUIRE(group_order(gens, n) == closure_order(gens, n));
  }
}

TEST_CASE("is_alternating") {
  CHECK(is_alternating({cycle(5, {0, 1, 2, 3, 4}), cycle(5, {0, 1, 2})}, 5));
  CHECK_FALSE(is_alternating({cycle(5, {0, 1, 2, 3, 4})}, 5));
  // dihedral of order 10
  std::vector<int> refl = {0, 4, 3, 2, 1};
  CHECK_FALSE(is_alternating({cycle(5, {0, 1, 2, 3, 4}), Permutation(std::move(refl))}, 5));
  CHECK_THROWS_AS(is_alternating({cycle(5, {0, 1})}, 5), std::invalid_argument);
}

TEST_CASE("cycle type basics") {
  CycleType ct = parse_cycle_type("3,1,1");
  CHECK(ct.degree() == 5);
  CHECK(ct.order() == 3);
  CHECK(ct.is_even());
  CHECK(parse_cycle_type("2,2,1").is_even());
  CHECK_FALSE(parse_cycle_type("2,1,1,1").is_even());
  CHECK(canonical_of_type(ct).is_even());
}

TEST_CASE("class enumeration counts and parity guard") {
  // class sizes: [5] -> 24, [3,1,1] -> 20, [2,2,1] -> 15
  struct Case {
    const char* type;
    u64 size;
  } cases[] = {{"5", 24}, {"3,1,1", 20}, {"2,2,1", 15}};
  for (const auto& c : cases) {
    CycleType ct = parse_cycle_type(c.type);
    u64 count = 0;
    enumerate_class(ct, [&](const Permutation& g) {
      ++count;
      CHECK(g.is_even() == ct.is_even());
      return true;
    });
    CHECK(count == c.size);
    CHECK(conjugacy_class_size(ct) == c.size);
  }
}

TEST_CASE("random_of_type produces the right type") {
  std::mt19937_64 rng(31);
  CycleType ct = parse_cycle_type("3,3,1,1");
  for (int i = 0; i < 50; ++i) {
    Permutation g = random_of_type(ct, rng);
    CHECK(g.is_even());
    // order must be 3
    CHECK((g * g * g).is_identity());
    CHECK_FALSE(g.is_identity());
  }
}

TEST_CASE("invariably_generates ground truth at n = 5") {
  Verdict v = invariably_generates(5, parse_cycle_type("5"),
                                   parse_cycle_type("3,1,1"), ExhaustiveMode{});
  CHECK(v.kind == VerdictKind::proven_true);
  CHECK(v.pairs_tested == 24);

  v = invariably_generates(5, parse_cycle_type("5"), parse_cycle_type("2,2,1"),
                           ExhaustiveMode{});
  CHECK(v.kind == VerdictKind::refuted);
  REQUIRE(v.witness.has_value());
  CHECK_FALSE(GroupBSGS({v.witness->first, v.witness->second}, 5).is_full_alternating());
}

TEST_CASE("exhaustive verdicts are deterministic") {
  auto run = [] {
    return invariably_generates(6, parse_cycle_type("3,3"),
                                parse_cycle_type("5,1"), ExhaustiveMode{});
  };
  Verdict v1 = run(), v2 = run();
  CHECK(v1.kind == v2.kind);
  CHECK(v1.pairs_tested == v2.pairs_tested);
}

TEST_CASE("one-sided reduction equals two-sided enumeration, n <= 6") {
  std::mt19937_64 rng(41);
  for (int n : {5, 6}) {
    std::vector<CycleType> types = even_types(n);
    for (int trial = 0; trial < 10; ++trial) {
      CycleType ct1 = types[rng() % types.size()];
      CycleType ct2 = types[rng() % types.size()];
      Verdict one_sided = invariably_generates(n, ct1, ct2, ExhaustiveMode{});
      bool all = true;
      enumerate_class(ct1, [&](const Permutation& g1) {
        bool keep = true;
        enumerate_class(ct2, [&](const Permutation& g2) {
          if (!GroupBSGS({g1, g2}, n).is_full_alternating()) {
            all = false;
            keep = false;
            return false;
          }
          return true;
        });
        return keep;
      });
      REQUIRE((one_sided.kind == VerdictKind::proven_true) == all);
    }
  }
}

TEST_CASE("sampling mode refutes or reports no refutation deterministically") {
  Verdict v = invariably_generates(5, parse_cycle_type("5"),
                                   parse_cycle_type("2,2,1"), SampleMode{200, 9});
  CHECK(v.kind == VerdictKind::refuted);
  Verdict w1 = invariably_generates(9, parse_cycle_type("9"),
                                    parse_cycle_type("5,1,1,1,1"), SampleMode{50, 4});
  Verdict w2 = invariably_generates(9, parse_cycle_type("9"),
                                    parse_cycle_type("5,1,1,1,1"), SampleMode{50, 4});
  CHECK(w1.kind == w2.kind);
  CHECK(w1.pairs_tested == w2.pairs_tested);
}

TEST_CASE("invariably_generates input validation") {
  CHECK_THROWS_AS(invariably_generates(5, parse_cycle_type("2,1,1,1"),
                                       parse_cycle_type("5"), ExhaustiveMode{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(invariably_generates(13, parse_cycle_type("13"),
                                       parse_cycle_type("13"), ExhaustiveMode{}),
                  std::length_error);
}

TEST_CASE("even_types_of_prime_power_order") {
  auto types = even_types_of_prime_power_order(8, 2, 2);
  std::set<std::string> names;
  for (const auto& t : types) names.insert(t.to_string());
  CHECK(names == std::set<std::string>{"4,4", "4,2,1,1"});

  types = even_types_of_prime_power_order(8, 5, 1);
  REQUIRE(types.size() == 1);
  CHECK(types[0].to_string() == "5,1,1,1");

  CHECK(even_types_of_prime_power_order(10, 11, 1).empty());
}

TEST_CASE("cert_to_witnesses") {
  auto pairs = cert_to_witnesses(Certificate{PrimeOrderPair{34, 17, 29, 1, 5}});
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].first.to_string() == "17,17");
  CHECK(pairs[0].second.to_string() == "29,1,1,1,1,1");

  pairs = cert_to_witnesses(Certificate{PrimePowerPair{8, 2, 2, 5}});
  REQUIRE(pairs.size() == 2);
  for (const auto& [a, b] : pairs) CHECK(b.to_string() == "5,1,1,1");

  pairs = cert_to_witnesses(Certificate{PrimePowerPair{15, 5, 1, 11}});
  bool found = false;
  for (const auto& [a, b] : pairs)
    if (a.to_string() == "5,5,5" && b.to_string() == "11,1,1,1,1") found = true;
  CHECK(found);

  CHECK_THROWS_AS(cert_to_witnesses(Certificate{Flagged{16, FlagReason::budget_exhausted, ""}}),
                  std::invalid_argument);
  // tampered certificates are rejected before witness construction
  CHECK_THROWS_AS(cert_to_witnesses(Certificate{PrimeOrderPair{34, 17, 29, 2, 0}}),
                  std::invalid_argument);
}
