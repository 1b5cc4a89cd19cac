#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nuspread/rational.hpp"

namespace nuspread {

/// A subset of a ground set, bit i standing for the i-th item in canonical order.
using Subset = std::uint64_t;

inline constexpr std::size_t kMaxGroundItems = 64;
/// Largest ground set on which 2^X is enumerated explicitly.
inline constexpr std::size_t kEnumerationLimit = 24;
/// Ground sets up to this size have the increasing-family claim verified on construction.
inline constexpr std::size_t kIncreasingCheckLimit = 20;
/// Logarithm base used in the exponent 4*floor(log(2*ell)) + 7 of the T_ell transform.
inline constexpr int kTransformLogBase = 2;

inline bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }
inline int subset_size(Subset s) { return __builtin_popcountll(s); }

/// Natural ordering of item encodings: digit runs compare numerically, so "2-10" sorts after "2-9".
bool natural_less(std::string_view a, std::string_view b);

/// Canonical "u-v" encoding of an unordered pair with u < v.
std::string edge_name(int u, int v);

/// Finite ordered set of distinct item identifiers.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> items, std::optional<int> arity = std::nullopt);

  /// The edges of the complete graph on {0,...,n-1}, encoded "u-v".
  static GroundSet complete_graph_edges(int n);

  std::size_t size() const { return items_.size(); }
  const std::vector<std::string>& items() const { return items_; }
  const std::string& item(std::size_t i) const { return items_.at(i); }
  std::optional<int> arity() const { return arity_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;

  Subset full_mask() const;
  Subset mask_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(Subset s) const;

  bool operator==(const GroundSet& other) const { return items_ == other.items_; }

 private:
  std::vector<std::string> items_;
  std::unordered_map<std::string, std::size_t> index_;
  std::optional<int> arity_;
};

/// Per-item probabilities p in [0,1]^X, aligned with the ground set's canonical order.
class ProbVector {
 public:
  ProbVector() = default;
  ProbVector(GroundSet ground, std::vector<Rational> values);
  static ProbVector constant(GroundSet ground, const Rational& value);

  const GroundSet& ground() const { return ground_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  const Rational& at(std::string_view name) const { return values_.at(ground_.require_index(name)); }
  std::vector<double> to_doubles() const;

 private:
  GroundSet ground_;
  std::vector<Rational> values_;
};

/// An explicit family of subsets of a small ground set.
class SubsetFamily {
 public:
  SubsetFamily() = default;
  /// Members are deduplicated and sorted. Throws if a member leaves the ground set, if
  /// `claims_increasing` is false on a checkable ground set, or if `ell` is exceeded.
  SubsetFamily(GroundSet ground, std::vector<Subset> members, bool claims_increasing = false,
               std::optional<int> ell = std::nullopt);
  static SubsetFamily from_names(GroundSet ground, const std::vector<std::vector<std::string>>& members,
                                 bool claims_increasing = false, std::optional<int> ell = std::nullopt);

  const GroundSet& ground() const { return ground_; }
  const std::vector<Subset>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool claims_increasing() const { return claims_increasing_; }
  std::optional<int> ell() const { return ell_; }
  bool contains(Subset s) const;

  /// Members with no proper subset in the family.
  std::vector<Subset> minimal_members() const;
  /// Size of the largest minimal member (0 for an empty family).
  int max_minimal_size() const;

 private:
  GroundSet ground_;
  std::vector<Subset> members_;
  bool claims_increasing_ = false;
  std::optional<int> ell_;
};

/// True iff the family is closed under taking supersets. Requires |X| <= kEnumerationLimit.
bool is_increasing(const SubsetFamily& family);

/// mu_p(F) = sum over S in F of prod_{x in S} p_x prod_{y not in S} (1 - p_y).
Rational mu_exact(const SubsetFamily& family, const ProbVector& p);

/// <G> = all supersets of members of G, as an explicit increasing family.
SubsetFamily up_closure(const SubsetFamily& generators);

/// e_q(G) = sum over S in G of prod_{x in S} q_x.
Rational expected_cover_count(const SubsetFamily& g, const ProbVector& q);

/// The exponent m = 4*floor(log2(2*ell)) + 7.
int transform_exponent(int ell);

/// p_x = 1 - (1 - q_x)^m with m = transform_exponent(ell).
ProbVector t_ell_transform(const ProbVector& q, int ell);

/// r_x = 1 - (1 - p_x)^k: the law of the union of k independent copies of X_p.
ProbVector boost_vector(const ProbVector& p, int k);

/// min(1, k * p_x) componentwise.
ProbVector scale_capped(const ProbVector& p, int k);

/// mu if mu <= 1/2, else 1 / (4 (1 - mu)).
Rational faithful_threshold_value(const Rational& mu);

/// faithful_threshold_value(mu_exact(family, p)) for a nontrivial increasing family.
Rational faithful_threshold_map(const SubsetFamily& family, const ProbVector& p);

/// (n)_x = n (n-1) ... (n-x+1); zero when x > n.
BigInt falling_factorial(unsigned long n, unsigned long x);

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);

}  // namespace nuspread
