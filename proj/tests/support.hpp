#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check: Laplacians are assembled from the raw
// edge list, ARI comes from pair enumeration, matchings from k! search.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "hermclust/digraph.hpp"
#include "hermclust/flow.hpp"

namespace hermclust::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Each unordered pair gets an edge with probability `density`, in a random
/// direction, weight uniform in [0.5, 2] (or 1 when unweighted).
inline WeightedDigraph random_digraph(Index n, double density, Rng& rng, bool weighted = true) {
  std::vector<Edge> edges;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) {
      if (uniform(rng) >= density) continue;
      const double w = weighted ? uniform(rng, 0.5, 2.0) : 1.0;
      if (uniform(rng) < 0.5)
        edges.push_back({u, v, w});
      else
        edges.push_back({v, u, w});
    }
  return from_edge_list(edges, n, MergePolicy::reject);
}

/// Random digraph with no isolated vertex (a random edge is added at each
/// vertex that ended up with none).
inline WeightedDigraph random_connected_digraph(Index n, double density, Rng& rng, bool weighted = true) {
  WeightedDigraph g = random_digraph(n, density, rng, weighted);
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::vector<bool> covered(static_cast<std::size_t>(n));
  for (Index u = 0; u < n; ++u) covered[static_cast<std::size_t>(u)] = !g.is_isolated(u);
  for (Index u = 0; u < n; ++u) {
    if (covered[static_cast<std::size_t>(u)]) continue;
    Index v = uniform_int(rng, 0, static_cast<int>(n) - 2);
    if (v >= u) ++v;
    edges.push_back({u, v, 1.0});
    covered[static_cast<std::size_t>(u)] = covered[static_cast<std::size_t>(v)] = true;
  }
  return from_edge_list(edges, n, MergePolicy::reject);
}

/// Uniform random labels on non-isolated vertices, redrawn until every
/// cluster is used.
inline Partition random_partition(const WeightedDigraph& g, int k, Rng& rng) {
  for (;;) {
    std::vector<int> labels(static_cast<std::size_t>(g.num_vertices()), kIsolatedLabel);
    std::vector<int> used(static_cast<std::size_t>(k), 0);
    for (Index u = 0; u < g.num_vertices(); ++u) {
      if (g.is_isolated(u)) continue;
      labels[static_cast<std::size_t>(u)] = uniform_int(rng, 0, k - 1);
      used[static_cast<std::size_t>(labels[static_cast<std::size_t>(u)])] = 1;
    }
    if (std::accumulate(used.begin(), used.end(), 0) == k) return Partition(labels, k);
  }
}

/// Degrees summed straight from the edge list.
inline std::vector<double> raw_degrees(const WeightedDigraph& g) {
  std::vector<double> d(static_cast<std::size_t>(g.num_vertices()), 0.0);
  for (const Edge& e : g.edges()) {
    d[static_cast<std::size_t>(e.src)] += e.weight;
    d[static_cast<std::size_t>(e.dst)] += e.weight;
  }
  return d;
}

inline Complex root(int k) {
  const double order = std::ceil(2.0 * std::numbers::pi * k);
  return {std::cos(2.0 * std::numbers::pi / order), std::sin(2.0 * std::numbers::pi / order)};
}

struct DenseLaplacian {
  MatrixXc L;
  std::vector<Index> active;  ///< original id of each row
};

/// L = I - D^{-1/2} A D^{-1/2} over non-isolated vertices, with
/// A(u,v) = w omega and A(v,u) = w conj(omega) for every edge u -> v.
inline DenseLaplacian dense_laplacian_oracle(const WeightedDigraph& g, int k) {
  const auto d = raw_degrees(g);
  DenseLaplacian out;
  std::vector<Index> pos(d.size(), -1);
  for (std::size_t u = 0; u < d.size(); ++u)
    if (d[u] > 0) {
      pos[u] = static_cast<Index>(out.active.size());
      out.active.push_back(static_cast<Index>(u));
    }
  const Index m = static_cast<Index>(out.active.size());
  MatrixXc a = MatrixXc::Zero(m, m);
  const Complex w = root(k);
  for (const Edge& e : g.edges()) {
    const Index i = pos[static_cast<std::size_t>(e.src)];
    const Index j = pos[static_cast<std::size_t>(e.dst)];
    a(i, j) += e.weight * w;
    a(j, i) += e.weight * std::conj(w);
  }
  out.L = MatrixXc::Identity(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      out.L(i, j) -= a(i, j) / std::sqrt(d[static_cast<std::size_t>(out.active[static_cast<std::size_t>(i)])] *
                                         d[static_cast<std::size_t>(out.active[static_cast<std::size_t>(j)])]);
  return out;
}

inline VectorXd eigenvalues_oracle(const MatrixXc& l) {
  return Eigen::SelfAdjointEigenSolver<MatrixXc>(l, Eigen::EigenvaluesOnly).eigenvalues();
}

/// Flow ratio straight from its definition.
inline double flow_ratio_oracle(const WeightedDigraph& g, const std::vector<int>& labels, int k) {
  const auto d = raw_degrees(g);
  std::vector<double> vol(static_cast<std::size_t>(k), 0.0);
  for (std::size_t u = 0; u < labels.size(); ++u)
    if (labels[u] >= 0) vol[static_cast<std::size_t>(labels[u])] += d[u];
  double phi = 0.0;
  for (int j = 1; j < k; ++j) {
    double cut = 0.0;
    for (const Edge& e : g.edges())
      if (labels[static_cast<std::size_t>(e.src)] == j && labels[static_cast<std::size_t>(e.dst)] == j - 1)
        cut += e.weight;
    phi += cut / (vol[static_cast<std::size_t>(j)] + vol[static_cast<std::size_t>(j - 1)]);
  }
  return phi;
}

/// y restricted to `active` rows: sqrt(d_u) omega^j / sqrt(k vol_j) on S_j.
inline VectorXc indicator_oracle(const WeightedDigraph& g, const std::vector<int>& labels, int k,
                                 const std::vector<Index>& active) {
  const auto d = raw_degrees(g);
  std::vector<double> vol(static_cast<std::size_t>(k), 0.0);
  for (std::size_t u = 0; u < labels.size(); ++u)
    if (labels[u] >= 0) vol[static_cast<std::size_t>(labels[u])] += d[u];
  const Complex w = root(k);
  VectorXc y(static_cast<Index>(active.size()));
  for (std::size_t i = 0; i < active.size(); ++i) {
    const auto u = static_cast<std::size_t>(active[i]);
    const int j = labels[u];
    y[static_cast<Index>(i)] = std::pow(w, j) * std::sqrt(d[u] / (k * vol[static_cast<std::size_t>(j)]));
  }
  return y;
}

/// ARI from the 2x2 pair-agreement table, enumerating all vertex pairs.
inline double ari_pair_oracle(const std::vector<int>& a, const std::vector<int>& b) {
  double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool sa = a[i] == a[j];
      const bool sb = b[i] == b[j];
      if (sa && sb) ++n11;
      else if (sa) ++n10;
      else if (sb) ++n01;
      else ++n00;
    }
  const double den = (n00 + n01) * (n01 + n11) + (n00 + n10) * (n10 + n11);
  if (den == 0.0) return 1.0;
  return 2.0 * (n00 * n11 - n01 * n10) / den;
}

/// Minimum over all bijections of sum_j weight(A_j sym-diff B_pi(j)), both
/// labelings over 0..k-1 (pad the smaller k with empty clusters first).
inline double min_symdiff_oracle(const std::vector<int>& a, const std::vector<int>& b, int k,
                                 const std::vector<double>& weights = {}) {
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t u = 0; u < a.size(); ++u) {
      const double w = weights.empty() ? 1.0 : weights[u];
      const int mapped = a[u] >= 0 ? perm[static_cast<std::size_t>(a[u])] : -1;
      // u is in A_j for j = a[u] and in B_l for l = b[u]; it counts once in
      // A_j sym-diff B_pi(j) unless pi(j) = l, and once more in the term for
      // the cluster mapped onto l.
      if (mapped != b[u]) total += (a[u] >= 0 ? w : 0.0) + (b[u] >= 0 ? w : 0.0);
    }
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace hermclust::testing
