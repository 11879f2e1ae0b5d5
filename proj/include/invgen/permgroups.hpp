#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "invgen/certify.hpp"

namespace invgen {

/// Permutation of {0, ..., n-1}, stored as the image sequence.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int degree() const { return (int)images_.size(); }
  int operator[](int p) const { return images_[p]; }
  bool is_identity() const;
  bool is_even() const;

  /// (f * g)[p] = f[g[p]]: g acts first.
  Permutation operator*(const Permutation& other) const;
  Permutation inverse() const;
  bool operator==(const Permutation&) const = default;

  const std::vector<int>& images() const { return images_; }

 private:
  std::vector<int> images_;
};

/// Multiset of cycle lengths summing to n; fixed points included as 1s.
struct CycleType {
  std::vector<u64> parts;  // kept sorted descending

  explicit CycleType(std::vector<u64> p);
  CycleType() = default;

  u64 degree() const;
  u64 order() const;  // lcm of parts
  bool is_even() const;
  std::string to_string() const;
  bool operator==(const CycleType&) const = default;
};

/// Parses "5,1,1" or "5 1 1" into a cycle type.
CycleType parse_cycle_type(const std::string& text);

/// Stabilizer chain (base and strong generating set) built by the
/// deterministic Schreier-Sims algorithm. Degree up to 64.
class GroupBSGS {
 public:
  GroupBSGS(const std::vector<Permutation>& gens, int n);

  u64 order_u64() const;  // throws std::overflow_error past 2^64
  bool is_full_alternating() const;
  bool contains(const Permutation& g) const;
  const std::vector<int>& base() const { return base_; }

 private:
  void append_base_point(const Permutation& g);
  void add_generator(Permutation g);
  void rebuild_orbit(size_t level);
  std::pair<Permutation, size_t> strip(Permutation g, size_t from_level) const;
  void random_boost(const std::vector<Permutation>& gens);
  bool orbit_product_is_half_factorial() const;
  void schreier_sims();

  int n_ = 0;
  std::vector<int> base_;
  // strong generators with the deepest stabilizer level they belong to:
  // (g, j) fixes base points 0..j-1, so g generates at levels <= j
  std::vector<std::pair<Permutation, size_t>> sgens_;
  std::vector<std::vector<int>> orbit_;          // points in BFS order
  std::vector<std::vector<Permutation>> reps_;   // transversal, by point
  std::vector<std::vector<char>> in_orbit_;
};

/// Exact order of <gens> acting on n points, n <= 16.
u64 group_order(const std::vector<Permutation>& gens, int n);

/// Whether <gens> = A_n. All generators must be even. Supports n <= 64.
bool is_alternating(const std::vector<Permutation>& gens, int n);

struct ExhaustiveMode {};
struct SampleMode {
  u64 samples = 1000;
  u64 seed = 0;
};
using OracleMode = std::variant<ExhaustiveMode, SampleMode>;

enum class VerdictKind { proven_true, refuted, sampled_no_refutation };

struct Verdict {
  VerdictKind kind = VerdictKind::sampled_no_refutation;
  std::optional<std::pair<Permutation, Permutation>> witness;  // refutation
  u64 pairs_tested = 0;
  u64 seed = 0;  // echoed for reproducibility in sample mode
};

/// Whether A_n is invariably generated by elements of cycle types ct1 and
/// ct2. Exhaustive mode fixes one representative of ct2 and enumerates
/// the full conjugacy class of ct1 (sound by conjugation invariance);
/// sample mode draws random conjugate pairs and can only refute.
Verdict invariably_generates(u64 n, const CycleType& ct1, const CycleType& ct2,
                             const OracleMode& mode);

/// Witness cycle-type pairs for a verified certificate. A prime-order
/// pair names one canonical pair; a prime-power pair yields every even
/// type of element order exactly p^a crossed with every even type of
/// order r.
std::vector<std::pair<CycleType, CycleType>> cert_to_witnesses(const Certificate& cert);

/// Canonical permutation of the given cycle type (cycles laid out over
/// consecutive points, longest first).
Permutation canonical_of_type(const CycleType& ct);

/// Size of the S_n conjugacy class, saturating at 2^63 on overflow.
u64 conjugacy_class_size(const CycleType& ct);

/// Calls fn for every permutation of the class until fn returns false.
void enumerate_class(const CycleType& ct, const std::function<bool(const Permutation&)>& fn);

Permutation random_of_type(const CycleType& ct, std::mt19937_64& rng);

/// Even cycle types on n points whose element order is exactly p^a.
std::vector<CycleType> even_types_of_prime_power_order(u64 n, u64 p, int a);

}  // namespace invgen
