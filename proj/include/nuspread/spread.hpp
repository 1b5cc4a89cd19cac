#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nuspread/core.hpp"
#include "nuspread/models.hpp"

namespace nuspread {

inline constexpr std::size_t kCoverExactLimit = 5;
inline constexpr std::size_t kFractionalCoverLimit = 8;
inline constexpr double kBruteForcePermutationLimit = 1e7;

/// A probability measure on subsets of a ground set.
struct SpreadMeasure {
  GroundSet ground;
  std::vector<Subset> support;
  std::vector<Rational> weights;
};

struct CoverSolution {
  SubsetFamily cover;
  Rational value;
  /// g(S) > 0 entries of an optimal fractional cover (fractional solver only).
  std::vector<std::pair<Subset, Rational>> fractional_weights;
  /// An optimal dual packing nu(T) over the minimal members of H (fractional solver only).
  std::vector<std::pair<Subset, Rational>> dual_weights;
};

/// V(H, q) = min e_q(G) over covers G of H. Requires |X| <= 5.
CoverSolution cover_value_exact(const SubsetFamily& h, const ProbVector& q);

/// V_f(H, q), the LP relaxation: min sum g(S) prod q, sum_{S subset T} g(S) >= 1 for T in H. |X| <= 8.
CoverSolution fractional_cover_value(const SubsetFamily& h, const ProbVector& q);

struct SpreadVerdict {
  bool ok = true;
  std::optional<Subset> violating;
  /// sum_{T superset S} nu(T) and 2 prod_{s in S} q_s at the violating S.
  Rational lhs;
  Rational rhs;
};

/// Checks sum_{T superset S} nu(T) <= 2 prod_{s in S} q_s for every S; reports the smallest violating mask.
SpreadVerdict verify_q_spread(const SpreadMeasure& nu, const ProbVector& q, const SubsetFamily& strict_support);

/// Requires a verified q-spread nu supported on h; returns cover_value_exact(h, q).value >= 1/2.
bool spread_implies_half(const SpreadMeasure& nu, const ProbVector& q, const SubsetFamily& h);

enum class SpreadMode { closed_form, brute_force };

/// P(sigma(S) subset H) for sigma uniform over permutations fixing every block setwise.
/// h must be a perfect matching on the vertex set of b; s must be vertex-disjoint.
Rational block_permutation_spread_prob(const Graph& h, const BlockStructure& b, const std::vector<Edge>& s,
                                       SpreadMode mode);

struct SpreadQ {
  ProbVector q;
  bool capped = false;
  /// 30 / max(n_y, n_z) times the spectrum indicator, before capping at 1.
  std::vector<Rational> uncapped;
};

/// q_uv = 30 / max(n_y, n_z) when u in U_y, v in U_z are adjacent in the spectrum at alpha, else 0.
/// Ground set: the edges of K_n.
SpreadQ spread_q_construction(const BlockStructure& b, double alpha);

struct PermutationMeasure {
  int n = 0;
  std::vector<std::vector<int>> perms;
  std::vector<Rational> weights;
};

struct ForcedSpreadVerdict {
  bool ok = true;
  std::vector<Edge> violating;
  Rational lhs;
  Rational rhs;
  std::size_t checked = 0;
  /// T_{|E(h)|}(q) when ok.
  std::optional<ProbVector> p;
};

inline constexpr int kForcedSpreadVertexLimit = 8;
inline constexpr std::size_t kForcedSpreadEdgeLimit = 20;

/// Checks P(sigma(R) subset H) <= 2 prod_{r in R \ F} q_r for all R containing F with positive
/// probability. q lives on the edges of K_n.
ForcedSpreadVerdict forced_spread_check(const Graph& h, const std::vector<Edge>& f, const PermutationMeasure& pi,
                                        const ProbVector& q);

}  // namespace nuspread
