#include "nuspread/models.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "nuspread/error.hpp"

namespace nuspread {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw InvalidArgument("negative vertex count");
  for (auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidArgument("edge endpoint outside the vertex set");
    if (u == v) throw InvalidArgument("loops are not allowed");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw InvalidArgument("duplicate edge");
  }
  adj_.assign(static_cast<std::size_t>(n), {});
  for (auto [u, v] : edges_) {
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

Graph Graph::complete(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return Graph(n, std::move(e));
}

Graph Graph::cycle(int n) {
  if (n < 3) throw InvalidArgument("a cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (int v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph(n, std::move(e));
}

Graph Graph::petersen() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, std::move(e));
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  const auto& a = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::string> Graph::edge_names() const {
  std::vector<std::string> out;
  out.reserve(edges_.size());
  for (auto [u, v] : edges_) out.push_back(edge_name(u, v));
  return out;
}

// ---------------------------------------------------------------------------

BlockStructure::BlockStructure(std::vector<std::vector<int>> blocks, std::vector<std::vector<double>> p)
    : blocks_(std::move(blocks)), p_(std::move(p)) {
  const std::size_t k = blocks_.size();
  if (k == 0) throw InvalidArgument("block structure needs at least one block");
  if (p_.size() != k) throw InvalidArgument("probability matrix must be k x k");
  for (std::size_t i = 0; i < k; ++i) {
    if (p_[i].size() != k) throw InvalidArgument("probability matrix must be k x k");
    for (std::size_t j = 0; j < k; ++j) {
      if (!(p_[i][j] >= 0.0 && p_[i][j] <= 1.0)) throw InvalidArgument("block probability outside [0,1]");
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (p_[i][j] != p_[j][i]) throw InvalidArgument("probability matrix must be symmetric");
    }
  }
  std::size_t total = 0;
  for (auto& b : blocks_) {
    std::sort(b.begin(), b.end());
    total += b.size();
  }
  n_ = static_cast<int>(total);
  block_of_.assign(total, -1);
  for (std::size_t i = 0; i < k; ++i) {
    for (int v : blocks_[i]) {
      if (v < 0 || v >= n_ || block_of_[static_cast<std::size_t>(v)] != -1) {
        throw InvalidArgument("blocks must partition {0, ..., n-1}");
      }
      block_of_[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
  }
}

BlockStructure BlockStructure::contiguous(const std::vector<int>& sizes, std::vector<std::vector<double>> p) {
  std::vector<std::vector<int>> blocks;
  int next = 0;
  for (int s : sizes) {
    if (s < 0) throw InvalidArgument("negative block size");
    std::vector<int> b(static_cast<std::size_t>(s));
    std::iota(b.begin(), b.end(), next);
    next += s;
    blocks.push_back(std::move(b));
  }
  return BlockStructure(std::move(blocks), std::move(p));
}

std::vector<int> BlockStructure::sizes() const {
  std::vector<int> out;
  for (const auto& b : blocks_) out.push_back(static_cast<int>(b.size()));
  return out;
}

BlockStructure BlockStructure::scaled(double factor) const {
  if (factor < 0) throw InvalidArgument("scale factor must be nonnegative");
  auto p = p_;
  for (auto& row : p) {
    for (auto& x : row) x = std::min(1.0, x * factor);
  }
  return BlockStructure(blocks_, std::move(p));
}

// ---------------------------------------------------------------------------

DegreeSequence::DegreeSequence(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  std::sort(degrees_.begin(), degrees_.end(), std::greater<>());
  for (int x : degrees_) {
    if (x < 0) throw InvalidArgument("negative degree");
    norm1_ += x;
    if (values_.empty() || values_.back() != x) {
      values_.push_back(x);
      sizes_.push_back(0);
    }
    ++sizes_.back();
  }
}

DegreeSequence DegreeSequence::from_classes(const std::vector<std::pair<int, int>>& value_count) {
  std::vector<int> d;
  for (auto [value, count] : value_count) {
    if (count < 0) throw InvalidArgument("negative class size");
    d.insert(d.end(), static_cast<std::size_t>(count), value);
  }
  return DegreeSequence(std::move(d));
}

void DegreeSequence::require_bivalued() const {
  if (!is_bivalued()) {
    throw InvalidArgument("degree sequence must take exactly two distinct values (has " +
                          std::to_string(values_.size()) + ")");
  }
}

bool is_graphical(std::vector<int> d) {
  std::sort(d.begin(), d.end(), std::greater<>());
  std::int64_t total = 0;
  for (int x : d) {
    if (x < 0) return false;
    total += x;
  }
  if (total % 2 != 0) return false;
  const std::size_t n = d.size();
  std::int64_t lhs = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    lhs += d[k - 1];
    std::int64_t rhs = static_cast<std::int64_t>(k) * static_cast<std::int64_t>(k - 1);
    for (std::size_t i = k; i < n; ++i) rhs += std::min<std::int64_t>(d[i], static_cast<std::int64_t>(k));
    if (lhs > rhs) return false;
  }
  return true;
}

double chung_lu_entry(int a, int b, std::int64_t norm) {
  if (norm <= 0) throw InvalidArgument("degree sum must be positive");
  const double prod = static_cast<double>(a) * static_cast<double>(b);
  if (prod >= static_cast<double>(norm)) return 1.0;
  return prod / static_cast<double>(norm);
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> sample_product(const ProbVector& p, RngStream stream) {
  Rng rng(stream);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (rng.bernoulli(p[i].get_d())) out.push_back(i);
  }
  return out;
}

namespace {

// Calls fn(t) for each index t in [0, count) kept independently with probability p.
template <class Fn>
void select_indices(std::uint64_t count, double p, Rng& rng, Fn&& fn) {
  if (count == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::uint64_t t = 0; t < count; ++t) fn(t);
    return;
  }
  std::uint64_t t = 0;
  while (true) {
    std::uint64_t skip = rng.geometric(p);
    if (skip >= count - t) return;
    t += skip;
    fn(t);
    ++t;
    if (t >= count) return;
  }
}

}  // namespace

Graph sample_block_model(const BlockStructure& b, RngStream stream) {
  Rng rng(stream);
  std::vector<Edge> edges;
  for (int i = 0; i < b.k(); ++i) {
    const auto& bi = b.block(i);
    const std::uint64_t m = bi.size();
    // Pairs inside block i, enumerated row by row.
    std::uint64_t row = 0;
    std::uint64_t row_start = 0;
    select_indices(m * (m - (m > 0 ? 1 : 0)) / 2, b.p(i, i), rng, [&](std::uint64_t t) {
      while (t >= row_start + (m - 1 - row)) {
        row_start += m - 1 - row;
        ++row;
      }
      std::uint64_t col = row + 1 + (t - row_start);
      edges.emplace_back(bi[row], bi[col]);
    });
    for (int j = i + 1; j < b.k(); ++j) {
      const auto& bj = b.block(j);
      const std::uint64_t mj = bj.size();
      select_indices(m * mj, b.p(i, j), rng,
                     [&](std::uint64_t t) { edges.emplace_back(bi[t / mj], bj[t % mj]); });
    }
  }
  return Graph(b.n(), std::move(edges));
}

BlockStructure chung_lu_probabilities(const DegreeSequence& d) {
  if (d.n() == 0) throw InvalidArgument("empty degree sequence");
  if (d.has_zero()) {
    throw InvalidArgument("Chung-Lu model requires positive degrees; remove zero-degree vertices first");
  }
  const auto& values = d.class_values();
  const auto& sizes = d.class_sizes();
  const std::size_t k = values.size();
  std::vector<std::vector<double>> p(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) p[i][j] = chung_lu_entry(values[i], values[j], d.norm1());
  }
  std::vector<int> block_sizes(sizes.begin(), sizes.end());
  return BlockStructure::contiguous(block_sizes, std::move(p));
}

Graph sample_chung_lu(const DegreeSequence& d, RngStream stream) {
  return sample_block_model(chung_lu_probabilities(d), stream);
}

// ---------------------------------------------------------------------------

Graph realize_degree_sequence(const DegreeSequence& d) {
  if (!is_graphical(d.degrees())) throw InvalidArgument("degree sequence is not graphical");
  const int n = d.n();
  std::vector<std::pair<int, int>> rem;  // (remaining degree, vertex)
  for (int v = 0; v < n; ++v) rem.emplace_back(d[v], v);
  std::vector<Edge> edges;
  while (true) {
    std::sort(rem.begin(), rem.end(), [](auto a, auto b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
    if (rem.empty() || rem[0].first == 0) break;
    auto [deg, v] = rem[0];
    rem[0].first = 0;
    for (int i = 1; i <= deg; ++i) {
      edges.emplace_back(v, rem[static_cast<std::size_t>(i)].second);
      --rem[static_cast<std::size_t>(i)].first;
    }
  }
  return Graph(n, std::move(edges));
}

namespace {

Graph switching_sample(const DegreeSequence& d, Rng& rng, int steps_per_edge) {
  Graph start = realize_degree_sequence(d);
  std::vector<Edge> edges = start.edges();
  std::set<Edge> present(edges.begin(), edges.end());
  const std::uint64_t m = edges.size();
  if (m < 2) return start;
  const std::uint64_t steps = m * static_cast<std::uint64_t>(steps_per_edge);
  auto norm = [](int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; };
  for (std::uint64_t s = 0; s < steps; ++s) {
    std::uint64_t i = rng.below(m);
    std::uint64_t j = rng.below(m);
    if (i == j) continue;
    auto [a, b] = edges[i];
    auto [c, e] = edges[j];
    if (rng.next() & 1) std::swap(c, e);
    if (a == e || c == b || a == c || b == e) continue;
    Edge x = norm(a, e);
    Edge y = norm(c, b);
    if (present.count(x) || present.count(y)) continue;
    present.erase(edges[i]);
    present.erase(edges[j]);
    present.insert(x);
    present.insert(y);
    edges[i] = x;
    edges[j] = y;
  }
  return Graph(d.n(), std::move(edges));
}

}  // namespace

Graph sample_degree_sequence_graph(const DegreeSequence& d, RngStream stream, const DegreeSamplerOptions& options) {
  if (!is_graphical(d.degrees())) throw InvalidArgument("degree sequence is not graphical");
  if (options.max_attempts < 1) throw InvalidArgument("max_attempts must be at least 1");
  Rng rng(stream);
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(d.norm1()));
  for (int v = 0; v < d.n(); ++v) stubs.insert(stubs.end(), static_cast<std::size_t>(d[v]), v);
  std::vector<Edge> edges;
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    for (std::size_t i = stubs.size(); i > 1; --i) {
      std::swap(stubs[i - 1], stubs[rng.below(i)]);
    }
    edges.clear();
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i];
      int v = stubs[i + 1];
      if (u == v) {
        ok = false;
        break;
      }
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return Graph(d.n(), std::move(edges));
  }
  if (options.switching_fallback) return switching_sample(d, rng, options.switching_steps_per_edge);
  throw BudgetExhausted("configuration-model rejection budget of " + std::to_string(options.max_attempts) +
                        " attempts exhausted; enable the switching fallback for heavy-tailed sequences");
}

}  // namespace nuspread
