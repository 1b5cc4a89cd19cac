#include "nuspread/lp.hpp"

#include "nuspread/error.hpp"

namespace nuspread {

LpSolution solve_packing_lp(const PackingLp& lp) {
  const std::size_t m = lp.b.size();
  const std::size_t n = lp.c.size();
  if (lp.a.size() != m) throw InvalidArgument("constraint matrix row count mismatch");
  for (const auto& row : lp.a) {
    if (row.size() != n) throw InvalidArgument("constraint matrix column count mismatch");
  }
  for (const auto& v : lp.b) {
    if (v < 0) throw InvalidArgument("packing LP needs a nonnegative right-hand side");
  }

  const std::size_t cols = n + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = lp.a[i][j];
    t[i][n + i] = 1;
    t[i][cols] = lp.b[i];
  }
  std::vector<Rational> obj(cols + 1);
  for (std::size_t j = 0; j < n; ++j) obj[j] = -lp.c[j];
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  LpSolution sol;
  Rational ratio;
  Rational best;
  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw Error("linear program is unbounded");

    auto& prow = t[leave];
    const Rational piv = prow[enter];
    for (auto& v : prow) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (prow[j] != 0) t[i][j] -= f * prow[j];
      }
    }
    if (obj[enter] != 0) {
      const Rational f = obj[enter];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (prow[j] != 0) obj[j] -= f * prow[j];
      }
    }
    basis[leave] = enter;
    ++sol.pivots;
  }

  sol.value = obj[cols];
  sol.x.assign(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) sol.x[basis[i]] = t[i][cols];
  }
  sol.y.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) sol.y[i] = obj[n + i];
  return sol;
}

}  // namespace nuspread
