#pragma once

#include <vector>

#include "nuspread/rational.hpp"

namespace nuspread {

/// max c.x subject to A x <= b, x >= 0, with b >= 0 (so the slack basis is feasible).
struct PackingLp {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<Rational> c;
};

struct LpSolution {
  Rational value;
  std::vector<Rational> x;
  /// Optimal multipliers of the rows, i.e. a solution of the dual min b.y, A^T y >= c, y >= 0.
  std::vector<Rational> y;
  int pivots = 0;
};

/// Exact rational simplex with Bland's rule. Throws if the problem is unbounded.
LpSolution solve_packing_lp(const PackingLp& lp);

}  // namespace nuspread
