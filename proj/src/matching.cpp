#include "nuspread/matching.hpp"

#include <algorithm>
#include <cstdint>

#include "nuspread/error.hpp"

namespace nuspread {

std::string to_string(PmReason r) {
  switch (r) {
    case PmReason::found: return "found";
    case PmReason::odd_order: return "odd_order";
    case PmReason::no_perfect_matching: return "no_perfect_matching";
  }
  return "unknown";
}

namespace {

class Blossom {
 public:
  explicit Blossom(const Graph& g)
      : g_(g), n_(static_cast<std::size_t>(g.n())), match_(n_, -1), parent_(n_), base_(n_), used_(n_),
        blossom_(n_), lca_mark_(n_) {
    queue_.reserve(n_);
  }

  void greedy() {
    for (int v = 0; v < g_.n(); ++v) {
      if (match_[idx(v)] != -1) continue;
      for (int u : g_.neighbors(v)) {
        if (match_[idx(u)] == -1) {
          match_[idx(u)] = v;
          match_[idx(v)] = u;
          break;
        }
      }
    }
  }

  // Grows the matching from every exposed vertex. With stop_on_failure, returns false at the
  // first exposed root without an augmenting path: such a root stays exposed in some maximum
  // matching, so no perfect matching exists.
  bool run(bool stop_on_failure) {
    for (int root = 0; root < g_.n(); ++root) {
      if (match_[idx(root)] != -1) continue;
      int end = find_path(root);
      if (end == -1) {
        if (stop_on_failure) return false;
        continue;
      }
      augment(end);
    }
    return true;
  }

  std::vector<Edge> matching() const {
    std::vector<Edge> out;
    for (int v = 0; v < g_.n(); ++v) {
      int u = match_[idx(v)];
      if (u > v) out.emplace_back(v, u);
    }
    return out;
  }

 private:
  static std::size_t idx(int v) { return static_cast<std::size_t>(v); }

  int lca(int a, int b) {
    std::fill(lca_mark_.begin(), lca_mark_.end(), 0);
    while (true) {
      a = base_[idx(a)];
      lca_mark_[idx(a)] = 1;
      if (match_[idx(a)] == -1) break;
      a = parent_[idx(match_[idx(a)])];
    }
    while (true) {
      b = base_[idx(b)];
      if (lca_mark_[idx(b)]) return b;
      b = parent_[idx(match_[idx(b)])];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[idx(v)] != b) {
      blossom_[idx(base_[idx(v)])] = 1;
      blossom_[idx(base_[idx(match_[idx(v)])])] = 1;
      parent_[idx(v)] = child;
      child = match_[idx(v)];
      v = parent_[idx(match_[idx(v)])];
    }
  }

  int find_path(int root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), -1);
    for (std::size_t i = 0; i < n_; ++i) base_[i] = static_cast<int>(i);
    used_[idx(root)] = 1;
    queue_.clear();
    queue_.push_back(root);
    std::size_t head = 0;
    while (head < queue_.size()) {
      int v = queue_[head++];
      for (int to : g_.neighbors(v)) {
        if (base_[idx(v)] == base_[idx(to)] || match_[idx(v)] == to) continue;
        if (to == root || (match_[idx(to)] != -1 && parent_[idx(match_[idx(to)])] != -1)) {
          int cur = lca(v, to);
          std::fill(blossom_.begin(), blossom_.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (std::size_t i = 0; i < n_; ++i) {
            if (blossom_[idx(base_[i])]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                queue_.push_back(static_cast<int>(i));
              }
            }
          }
        } else if (parent_[idx(to)] == -1) {
          parent_[idx(to)] = v;
          if (match_[idx(to)] == -1) return to;
          int next = match_[idx(to)];
          used_[idx(next)] = 1;
          queue_.push_back(next);
        }
      }
    }
    return -1;
  }

  void augment(int v) {
    while (v != -1) {
      int pv = parent_[idx(v)];
      int ppv = match_[idx(pv)];
      match_[idx(v)] = pv;
      match_[idx(pv)] = v;
      v = ppv;
    }
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<int> match_, parent_, base_;
  std::vector<char> used_, blossom_, lca_mark_;
  std::vector<int> queue_;
};

}  // namespace

PmResult perfect_matching(const Graph& g) {
  PmResult r;
  if (g.n() % 2 != 0) {
    r.reason = PmReason::odd_order;
    return r;
  }
  for (int v = 0; v < g.n(); ++v) {
    if (g.degree(v) == 0) return r;
  }
  Blossom b(g);
  b.greedy();
  if (!b.run(true)) return r;
  r.has_perfect_matching = true;
  r.reason = PmReason::found;
  r.witness = b.matching();
  return r;
}

bool has_perfect_matching(const Graph& g) { return perfect_matching(g).has_perfect_matching; }

std::vector<Edge> maximum_matching(const Graph& g) {
  Blossom b(g);
  b.greedy();
  b.run(false);
  return b.matching();
}

int count_isolated(const Graph& g, const std::vector<int>& block, IsolationScope scope) {
  std::vector<char> in_block(static_cast<std::size_t>(g.n()), 0);
  for (int v : block) {
    if (v < 0 || v >= g.n()) throw InvalidArgument("block vertex outside the graph");
    in_block[static_cast<std::size_t>(v)] = 1;
  }
  int count = 0;
  for (int v : block) {
    if (scope == IsolationScope::global) {
      if (g.degree(v) == 0) ++count;
    } else {
      const auto& nb = g.neighbors(v);
      if (std::none_of(nb.begin(), nb.end(), [&](int u) { return in_block[static_cast<std::size_t>(u)] != 0; })) {
        ++count;
      }
    }
  }
  return count;
}

bool brute_force_pm_oracle(const Graph& g) {
  const int n = g.n();
  if (n > kBruteForcePmLimit) {
    throw InfeasibleSize("brute-force matching oracle supports at most " + std::to_string(kBruteForcePmLimit) +
                         " vertices");
  }
  if (n % 2 != 0) return false;
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : g.edges()) {
    nbr[static_cast<std::size_t>(u)] |= 1u << v;
    nbr[static_cast<std::size_t>(v)] |= 1u << u;
  }
  // memo over the set of still-unmatched vertices: 0 unknown, 1 yes, 2 no
  std::vector<char> memo(std::size_t{1} << n, 0);
  auto solve = [&](auto&& self, std::uint32_t left) -> bool {
    if (left == 0) return true;
    char& m = memo[left];
    if (m) return m == 1;
    int v = __builtin_ctz(left);
    std::uint32_t rest = left & ~(1u << v);
    std::uint32_t cand = nbr[static_cast<std::size_t>(v)] & rest;
    bool ok = false;
    while (cand && !ok) {
      int u = __builtin_ctz(cand);
      cand &= cand - 1;
      ok = self(self, rest & ~(1u << u));
    }
    m = ok ? 1 : 2;
    return ok;
  };
  return solve(solve, (n == 32 ? ~0u : ((1u << n) - 1)));
}

}  // namespace nuspread
