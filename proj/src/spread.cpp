#include "nuspread/spread.hpp"

#include <algorithm>
#include <set>

#include "nuspread/error.hpp"
#include "nuspread/lp.hpp"
#include "nuspread/spectrum.hpp"

namespace nuspread {

namespace {

Rational subset_weight(Subset s, const ProbVector& q) {
  Rational w = 1;
  for (Subset t = s; t; t &= t - 1) w *= q[static_cast<std::size_t>(__builtin_ctzll(t))];
  return w;
}

void require_ground(const SubsetFamily& h, const ProbVector& q, std::size_t limit, const char* what) {
  if (!(h.ground() == q.ground())) throw InvalidArgument("family and q live on different ground sets");
  if (h.ground().size() > limit) {
    throw InfeasibleSize(std::string(what) + ": ground set of " + std::to_string(h.ground().size()) +
                         " items exceeds the limit of " + std::to_string(limit));
  }
}

template <class Fn>
void for_each_submask(Subset t, Fn&& fn) {
  Subset s = t;
  while (true) {
    fn(s);
    if (s == 0) break;
    s = (s - 1) & t;
  }
}

}  // namespace

CoverSolution cover_value_exact(const SubsetFamily& h, const ProbVector& q) {
  require_ground(h, q, kCoverExactLimit, "cover_value_exact");
  const auto minimal = h.minimal_members();
  const std::size_t m = minimal.size();
  const std::size_t n_items = h.ground().size();

  // Each candidate S covers the minimal members containing it; DP over the set of covered members.
  struct Candidate {
    Subset s;
    std::uint32_t covers;
    Rational w;
  };
  std::vector<Candidate> cands;
  for (Subset s = 0; s < (Subset{1} << n_items); ++s) {
    std::uint32_t cov = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (is_subset(s, minimal[i])) cov |= 1u << i;
    }
    if (cov) cands.push_back({s, cov, subset_weight(s, q)});
  }
  const std::uint32_t full = m == 32 ? ~0u : ((1u << m) - 1);
  std::vector<std::optional<Rational>> dp(std::size_t{full} + 1);
  std::vector<std::pair<std::uint32_t, Subset>> from(std::size_t{full} + 1);
  dp[0] = Rational(0);
  Rational cost;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    if (!dp[mask]) continue;
    for (const auto& c : cands) {
      std::uint32_t next = mask | c.covers;
      if (next == mask) continue;
      cost = *dp[mask] + c.w;
      if (!dp[next] || cost < *dp[next]) {
        dp[next] = cost;
        from[next] = {mask, c.s};
      }
    }
    if (mask == full) break;
  }
  std::vector<Subset> chosen;
  for (std::uint32_t mask = full; mask != 0; mask = from[mask].first) chosen.push_back(from[mask].second);
  CoverSolution sol;
  sol.value = *dp[full];
  sol.cover = SubsetFamily(h.ground(), std::move(chosen));
  return sol;
}

CoverSolution fractional_cover_value(const SubsetFamily& h, const ProbVector& q) {
  require_ground(h, q, kFractionalCoverLimit, "fractional_cover_value");
  const auto minimal = h.minimal_members();
  std::set<Subset> row_set;
  for (Subset t : minimal) for_each_submask(t, [&](Subset s) { row_set.insert(s); });
  const std::vector<Subset> rows(row_set.begin(), row_set.end());

  // Dual packing: max sum nu_T, sum_{T superset S} nu_T <= w(S).
  PackingLp lp;
  lp.c.assign(minimal.size(), 1);
  for (Subset s : rows) {
    std::vector<Rational> row(minimal.size());
    for (std::size_t j = 0; j < minimal.size(); ++j) row[j] = is_subset(s, minimal[j]) ? 1 : 0;
    lp.a.push_back(std::move(row));
    lp.b.push_back(subset_weight(s, q));
  }
  LpSolution lps = solve_packing_lp(lp);

  CoverSolution sol;
  sol.value = lps.value;
  std::vector<Subset> support;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (lps.y[i] != 0) {
      sol.fractional_weights.emplace_back(rows[i], lps.y[i]);
      support.push_back(rows[i]);
    }
  }
  for (std::size_t j = 0; j < minimal.size(); ++j) {
    if (lps.x[j] != 0) sol.dual_weights.emplace_back(minimal[j], lps.x[j]);
  }
  sol.cover = SubsetFamily(h.ground(), std::move(support));
  return sol;
}

SpreadVerdict verify_q_spread(const SpreadMeasure& nu, const ProbVector& q, const SubsetFamily& strict_support) {
  if (!(nu.ground == q.ground()) || !(strict_support.ground() == q.ground())) {
    throw InvalidArgument("measure, q and support family live on different ground sets");
  }
  if (nu.support.size() != nu.weights.size()) throw InvalidArgument("support and weights differ in length");
  const Subset full = q.ground().full_mask();
  Rational total = 0;
  for (std::size_t i = 0; i < nu.weights.size(); ++i) {
    if (nu.weights[i] < 0) throw InvalidArgument("negative measure weight");
    total += nu.weights[i];
  }
  if (total != 1) throw InvalidArgument("measure weights must sum to 1 (got " + to_string(total) + ")");
  std::vector<Subset> sorted_support = nu.support;
  std::sort(sorted_support.begin(), sorted_support.end());
  if (std::adjacent_find(sorted_support.begin(), sorted_support.end()) != sorted_support.end()) {
    throw InvalidArgument("measure support entries must be distinct");
  }
  std::set<Subset> candidates;
  for (Subset t : nu.support) {
    if (!is_subset(t, full)) throw InvalidArgument("support member is not a subset of the ground set");
    if (!strict_support.contains(t)) throw InvalidArgument("measure is not supported inside the given family");
    if (static_cast<std::size_t>(subset_size(t)) > kEnumerationLimit) {
      throw InfeasibleSize("support member too large to enumerate its subsets");
    }
    for_each_submask(t, [&](Subset s) { candidates.insert(s); });
  }
  SpreadVerdict v;
  for (Subset s : candidates) {
    Rational lhs = 0;
    for (std::size_t i = 0; i < nu.support.size(); ++i) {
      if (is_subset(s, nu.support[i])) lhs += nu.weights[i];
    }
    Rational rhs = 2 * subset_weight(s, q);
    if (lhs > rhs) {
      v.ok = false;
      v.violating = s;
      v.lhs = lhs;
      v.rhs = rhs;
      return v;
    }
  }
  return v;
}

bool spread_implies_half(const SpreadMeasure& nu, const ProbVector& q, const SubsetFamily& h) {
  if (!verify_q_spread(nu, q, h).ok) throw InvalidArgument("measure is not q-spread; the premise fails");
  return cover_value_exact(h, q).value >= Rational(1, 2);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> matching_partner(const Graph& h, int n) {
  if (h.n() != n) throw InvalidArgument("matching and block structure have different vertex sets");
  std::vector<int> mate(static_cast<std::size_t>(n), -1);
  for (auto [u, v] : h.edges()) {
    mate[static_cast<std::size_t>(u)] = v;
    mate[static_cast<std::size_t>(v)] = u;
  }
  for (int v = 0; v < n; ++v) {
    if (h.degree(v) != 1) throw InvalidArgument("h must be a perfect matching");
  }
  return mate;
}

void require_vertex_disjoint(const std::vector<Edge>& s, int n) {
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : s) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw InvalidArgument("invalid edge in S");
    if (used[static_cast<std::size_t>(u)] || used[static_cast<std::size_t>(v)]) {
      throw InvalidArgument("S must be vertex-disjoint");
    }
    used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = 1;
  }
}

}  // namespace

Rational block_permutation_spread_prob(const Graph& h, const BlockStructure& b, const std::vector<Edge>& s,
                                       SpreadMode mode) {
  const int n = b.n();
  const auto mate = matching_partner(h, n);
  require_vertex_disjoint(s, n);
  const int k = b.k();

  if (mode == SpreadMode::closed_form) {
    auto pair_index = [k](int i, int j) { return static_cast<std::size_t>(std::min(i, j) * k + std::max(i, j)); };
    std::vector<unsigned long> hc(static_cast<std::size_t>(k * k), 0);
    std::vector<unsigned long> sc(static_cast<std::size_t>(k * k), 0);
    std::vector<unsigned long> zeta(static_cast<std::size_t>(k), 0);
    for (auto [u, v] : h.edges()) ++hc[pair_index(b.block_of(u), b.block_of(v))];
    for (auto [u, v] : s) {
      ++sc[pair_index(b.block_of(u), b.block_of(v))];
      ++zeta[static_cast<std::size_t>(b.block_of(u))];
      ++zeta[static_cast<std::size_t>(b.block_of(v))];
    }
    BigInt num = 1;
    BigInt den = 1;
    for (int i = 0; i < k; ++i) {
      for (int j = i; j < k; ++j) {
        const auto idx = pair_index(i, j);
        num *= falling_factorial(hc[idx], sc[idx]);
        if (i == j) num <<= sc[idx];
      }
      const auto ni = static_cast<unsigned long>(b.size(i));
      num *= factorial(ni - zeta[static_cast<std::size_t>(i)]);
      den *= factorial(ni);
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  double total = 1;
  for (int i = 0; i < k; ++i) total *= factorial(static_cast<unsigned long>(b.size(i))).get_d();
  if (total > kBruteForcePermutationLimit) {
    throw InfeasibleSize("brute force needs at most 1e7 block-invariant permutations");
  }
  std::vector<std::vector<int>> perm(b.blocks());
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::uint64_t hits = 0;
  std::uint64_t count = 0;
  while (true) {
    for (int i = 0; i < k; ++i) {
      const auto& src = b.block(i);
      for (std::size_t t = 0; t < src.size(); ++t) sigma[static_cast<std::size_t>(src[t])] = perm[static_cast<std::size_t>(i)][t];
    }
    bool inside = true;
    for (auto [u, v] : s) {
      if (mate[static_cast<std::size_t>(sigma[static_cast<std::size_t>(u)])] != sigma[static_cast<std::size_t>(v)]) {
        inside = false;
        break;
      }
    }
    hits += inside ? 1 : 0;
    ++count;
    int i = k - 1;
    while (i >= 0 && !std::next_permutation(perm[static_cast<std::size_t>(i)].begin(), perm[static_cast<std::size_t>(i)].end())) --i;
    if (i < 0) break;
  }
  Rational r(BigInt(static_cast<unsigned long>(hits)), BigInt(static_cast<unsigned long>(count)));
  r.canonicalize();
  return r;
}

SpreadQ spread_q_construction(const BlockStructure& b, double alpha) {
  const int n = b.n();
  GroundSet ground = GroundSet::complete_graph_edges(n);
  SpreadQ out;
  std::vector<Rational> values;
  values.reserve(ground.size());
  out.uncapped.reserve(ground.size());
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const int y = b.block_of(u);
      const int z = b.block_of(v);
      Rational value = 0;
      if (spectrum_capacity(b, y, z) >= alpha) value = ratio(30, std::max(b.size(y), b.size(z)));
      out.uncapped.push_back(value);
      if (value > 1) {
        out.capped = true;
        value = 1;
      }
      values.push_back(value);
    }
  }
  out.q = ProbVector(std::move(ground), std::move(values));
  return out;
}

// ---------------------------------------------------------------------------

ForcedSpreadVerdict forced_spread_check(const Graph& h, const std::vector<Edge>& f, const PermutationMeasure& pi,
                                        const ProbVector& q) {
  const int n = h.n();
  if (n > kForcedSpreadVertexLimit) throw InfeasibleSize("forced spread check supports at most 8 vertices");
  if (h.edge_count() > kForcedSpreadEdgeLimit) throw InfeasibleSize("forced spread check: too many edges in h");
  if (pi.n != n) throw InvalidArgument("permutation measure acts on a different vertex count");
  if (pi.perms.size() != pi.weights.size()) throw InvalidArgument("permutations and weights differ in length");
  if (!(q.ground() == GroundSet::complete_graph_edges(n))) throw InvalidArgument("q must live on the edges of K_n");

  auto edge_bit = [n](int u, int v) {
    if (u > v) std::swap(u, v);
    // position of (u, v) in the lexicographic order of K_n's edges
    int idx = u * n - u * (u + 1) / 2 + (v - u - 1);
    return Subset{1} << idx;
  };

  Subset f_mask = 0;
  std::vector<char> fixed(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : f) {
    if (!h.has_edge(u, v)) throw InvalidArgument("F must be a subset of E(h)");
    f_mask |= edge_bit(u, v);
    fixed[static_cast<std::size_t>(u)] = fixed[static_cast<std::size_t>(v)] = 1;
  }
  Rational total = 0;
  std::vector<Subset> preimage;
  for (std::size_t t = 0; t < pi.perms.size(); ++t) {
    const auto& sigma = pi.perms[t];
    if (static_cast<int>(sigma.size()) != n) throw InvalidArgument("permutation has the wrong length");
    std::vector<int> inv(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
      int w = sigma[static_cast<std::size_t>(v)];
      if (w < 0 || w >= n || inv[static_cast<std::size_t>(w)] != -1) throw InvalidArgument("not a permutation");
      inv[static_cast<std::size_t>(w)] = v;
    }
    for (int v = 0; v < n; ++v) {
      if (fixed[static_cast<std::size_t>(v)] && sigma[static_cast<std::size_t>(v)] != v) {
        throw InvalidArgument("every permutation in the support must fix the vertices of F");
      }
    }
    if (pi.weights[t] < 0) throw InvalidArgument("negative permutation weight");
    total += pi.weights[t];
    Subset m = 0;
    for (auto [a, c] : h.edges()) m |= edge_bit(inv[static_cast<std::size_t>(a)], inv[static_cast<std::size_t>(c)]);
    preimage.push_back(m);
  }
  if (total != 1) throw InvalidArgument("permutation weights must sum to 1");

  std::set<Subset> rs;
  for (std::size_t t = 0; t < preimage.size(); ++t) {
    if (pi.weights[t] == 0) continue;
    for_each_submask(preimage[t] & ~f_mask, [&](Subset r) { rs.insert(r | f_mask); });
  }
  ForcedSpreadVerdict verdict;
  for (Subset r : rs) {
    ++verdict.checked;
    Rational lhs = 0;
    for (std::size_t t = 0; t < preimage.size(); ++t) {
      if (is_subset(r, preimage[t])) lhs += pi.weights[t];
    }
    Rational rhs = 2 * subset_weight(r & ~f_mask, q);
    if (lhs > rhs) {
      verdict.ok = false;
      verdict.lhs = lhs;
      verdict.rhs = rhs;
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (r & edge_bit(u, v)) verdict.violating.emplace_back(u, v);
        }
      }
      return verdict;
    }
  }
  verdict.p = t_ell_transform(q, std::max<int>(1, static_cast<int>(h.edge_count())));
  return verdict;
}

}  // namespace nuspread
