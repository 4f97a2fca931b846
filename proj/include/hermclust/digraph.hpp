#pragma once

#include <span>
#include <vector>

#include "hermclust/common.hpp"

namespace hermclust {

struct Edge {
  Index src = 0;
  Index dst = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// How from_edge_list resolves a pair that has edges in both directions.
enum class MergePolicy {
  reject,  ///< reciprocal pairs are an error
  net,     ///< keep |w(u,v) - w(v,u)| in the heavier direction
  sum,     ///< keep both directions
};

/// Counters filled while building a graph from raw triples.
struct BuildDiagnostics {
  Index self_loops_dropped = 0;
  Index zero_weight_dropped = 0;
  Index duplicates_merged = 0;
  Index reciprocal_pairs_netted = 0;
};

/// Immutable sparse weighted digraph.
///
/// Edges are kept sorted by (src, dst), with at most one edge per ordered pair,
/// no self-loops and strictly positive weights. In- and out-adjacency are both
/// stored in compressed form, and the degree tables are filled at construction.
/// Vertices of total degree zero stay in the graph and are reported by
/// is_isolated().
class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  /// Builds from edges already satisfying the class invariants (sorted, unique,
  /// no loops, positive weights). Prefer from_edge_list() for raw input.
  WeightedDigraph(Index n, std::vector<Edge> edges, BuildDiagnostics diagnostics = {});

  Index num_vertices() const noexcept { return n_; }
  Index num_edges() const noexcept { return static_cast<Index>(edges_.size()); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(Index e) const { return edges_[static_cast<std::size_t>(e)]; }

  /// Indices into edges() of the edges leaving / entering u.
  std::span<const Index> out_edges(Index u) const;
  std::span<const Index> in_edges(Index u) const;

  const VectorXd& out_degree() const noexcept { return d_out_; }
  const VectorXd& in_degree() const noexcept { return d_in_; }
  const VectorXd& degree() const noexcept { return d_total_; }

  bool is_isolated(Index u) const { return d_total_[u] == 0.0; }
  Index num_isolated() const noexcept { return num_isolated_; }

  /// w(u, v), zero when there is no edge u -> v.
  double weight(Index u, Index v) const;
  double total_weight() const noexcept { return total_weight_; }

  const BuildDiagnostics& diagnostics() const noexcept { return diagnostics_; }

  friend bool operator==(const WeightedDigraph& a, const WeightedDigraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  Index n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Index> out_offsets_{0};
  std::vector<Index> in_offsets_{0};
  std::vector<Index> out_index_;
  std::vector<Index> in_index_;
  VectorXd d_out_;
  VectorXd d_in_;
  VectorXd d_total_;
  double total_weight_ = 0.0;
  Index num_isolated_ = 0;
  BuildDiagnostics diagnostics_;
};

/// Builds a graph from raw (u, v, weight) triples over vertices 0..n-1.
///
/// Self-loops and zero weights are dropped and counted. Same-direction
/// duplicates are summed before the reciprocal policy is applied.
WeightedDigraph from_edge_list(std::span<const Edge> triples, Index n,
                               MergePolicy policy = MergePolicy::net);

/// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(Index n, std::vector<Index> ids);

  static VertexSet all(Index n);

  Index universe() const noexcept { return n_; }
  std::span<const Index> ids() const noexcept { return ids_; }
  Index size() const noexcept { return static_cast<Index>(ids_.size()); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(Index u) const;
  std::vector<bool> mask() const;

 private:
  Index n_ = 0;
  std::vector<Index> ids_;
};

/// Sum of total degrees over s.
double volume(const WeightedDigraph& g, const VertexSet& s);

/// Directed weight w(s, t) of edges leaving s and entering t. s and t must be disjoint.
double cut_weight(const WeightedDigraph& g, const VertexSet& s, const VertexSet& t);

inline constexpr Index kDenseGuard = 4096;

/// Real adjacency M with M(u, v) = w(u, v).
MatrixXd dense_adjacency(const WeightedDigraph& g, Index guard = kDenseGuard);

}  // namespace hermclust
