#pragma once

#include "hermclust/cluster.hpp"

namespace hermclust {

// Comparison methods, implemented at the level of their one-paragraph
// descriptions only: eigenvector scaling and row handling take the simplest
// reading. They reproduce comparative trends and are not reference
// implementations of the cited works.

struct BaselineConfig {
  KMeansConfig kmeans;
  Index guard = kDenseGuard;
};

/// DD-SYM: A = M^T M + M M^T, top-k eigenvectors of D_A^{-1} A (computed
/// through D_A^{-1/2} A D_A^{-1/2}) as rows of the embedding, unweighted
/// k-means. Zero-degree rows are dropped as isolated.
Clustering dd_sym_baseline(const WeightedDigraph& g, int k, const BaselineConfig& cfg = {});

/// Herm-RW: Hermitian H with H(u,v) = i w(u,v), H(v,u) = -i w(u,v); top
/// ceil(k/2) eigenvectors by |eigenvalue| of the degree-normalized matrix,
/// real and imaginary parts stacked, unweighted k-means.
Clustering herm_rw_baseline(const WeightedDigraph& g, int k, const BaselineConfig& cfg = {});

}  // namespace hermclust
