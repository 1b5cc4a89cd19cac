#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nuspread/core.hpp"
#include "nuspread/rng.hpp"

namespace nuspread {

using Edge = std::pair<int, int>;

/// Simple undirected graph on {0, ..., n-1}. Edges are stored as (u, v) with u < v, sorted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n, std::vector<Edge> edges = {});

  static Graph complete(int n);
  static Graph cycle(int n);
  static Graph petersen();

  int n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(int u, int v) const;

  /// Canonical "u-v" names of the edges, in edge order.
  std::vector<std::string> edge_names() const;

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

/// Partition of {0, ..., n-1} into blocks with a symmetric matrix of edge probabilities.
class BlockStructure {
 public:
  BlockStructure() = default;
  BlockStructure(std::vector<std::vector<int>> blocks, std::vector<std::vector<double>> p);
  /// Blocks of the given sizes laid out consecutively: {0..s0-1}, {s0..s0+s1-1}, ...
  static BlockStructure contiguous(const std::vector<int>& sizes, std::vector<std::vector<double>> p);

  int n() const { return n_; }
  int k() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& block(int i) const { return blocks_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::vector<double>>& p() const { return p_; }
  double p(int i, int j) const { return p_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  int size(int i) const { return static_cast<int>(blocks_[static_cast<std::size_t>(i)].size()); }
  std::vector<int> sizes() const;
  int block_of(int v) const { return block_of_.at(static_cast<std::size_t>(v)); }

  /// Same partition with every probability replaced by min(1, factor * P_ij).
  BlockStructure scaled(double factor) const;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<std::vector<double>> p_;
  std::vector<int> block_of_;
};

/// Nonincreasing degree sequence with its value classes.
class DegreeSequence {
 public:
  DegreeSequence() = default;
  explicit DegreeSequence(std::vector<int> degrees);
  /// Class values with multiplicities, e.g. {{30, 55}, {2, 2945}}.
  static DegreeSequence from_classes(const std::vector<std::pair<int, int>>& value_count);

  int n() const { return static_cast<int>(degrees_.size()); }
  const std::vector<int>& degrees() const { return degrees_; }
  int operator[](int i) const { return degrees_.at(static_cast<std::size_t>(i)); }
  std::int64_t norm1() const { return norm1_; }
  /// Distinct values in decreasing order.
  const std::vector<int>& class_values() const { return values_; }
  const std::vector<int>& class_sizes() const { return sizes_; }
  int class_count() const { return static_cast<int>(values_.size()); }
  bool is_bivalued() const { return values_.size() == 2; }
  /// Throws unless exactly two distinct values occur.
  void require_bivalued() const;

  bool has_zero() const { return !degrees_.empty() && degrees_.back() == 0; }
  bool operator==(const DegreeSequence& other) const { return degrees_ == other.degrees_; }

 private:
  std::vector<int> degrees_;
  std::int64_t norm1_ = 0;
  std::vector<int> values_;
  std::vector<int> sizes_;
};

/// Erdos-Gallai test (the sum must also be even).
bool is_graphical(std::vector<int> degrees);

/// min(1, a * b / norm), the shared Chung-Lu entry.
double chung_lu_entry(int a, int b, std::int64_t norm);

std::vector<std::size_t> sample_product(const ProbVector& p, RngStream rng);

Graph sample_block_model(const BlockStructure& b, RngStream rng);

/// Blocks group equal degrees (largest degree first); block matrix min(1, a_i a_j / ||d||_1).
BlockStructure chung_lu_probabilities(const DegreeSequence& d);

Graph sample_chung_lu(const DegreeSequence& d, RngStream rng);

struct DegreeSamplerOptions {
  int max_attempts = 10000;
  /// After the rejection budget is spent, fall back to double-edge switching (approximately uniform).
  bool switching_fallback = false;
  int switching_steps_per_edge = 100;
};

Graph sample_degree_sequence_graph(const DegreeSequence& d, RngStream rng, const DegreeSamplerOptions& options = {});

/// Havel-Hakimi realization, vertex i receiving degrees()[i].
Graph realize_degree_sequence(const DegreeSequence& d);

}  // namespace nuspread
