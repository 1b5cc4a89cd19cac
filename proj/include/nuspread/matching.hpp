#pragma once

#include <string>
#include <vector>

#include "nuspread/models.hpp"

namespace nuspread {

enum class PmReason { found, odd_order, no_perfect_matching };

std::string to_string(PmReason r);

struct PmResult {
  bool has_perfect_matching = false;
  PmReason reason = PmReason::no_perfect_matching;
  /// A perfect matching when one exists.
  std::vector<Edge> witness;
};

/// Decides perfect matching existence with Edmonds' blossom algorithm.
PmResult perfect_matching(const Graph& g);
bool has_perfect_matching(const Graph& g);

std::vector<Edge> maximum_matching(const Graph& g);

enum class IsolationScope { global, within_block };

/// Vertices of `block` with degree 0 (global) or with no neighbor inside `block` (within_block).
int count_isolated(const Graph& g, const std::vector<int>& block, IsolationScope scope);

inline constexpr int kBruteForcePmLimit = 14;

/// Exhaustive pairing recursion with memoization over vertex subsets; n <= 14.
bool brute_force_pm_oracle(const Graph& g);

}  // namespace nuspread
