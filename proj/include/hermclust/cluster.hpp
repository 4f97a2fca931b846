#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "hermclust/flow.hpp"
#include "hermclust/kmeans.hpp"
#include "hermclust/spectral.hpp"

namespace hermclust {

/// Vertices placed in the complex plane by F(v) = f1(v) / sqrt(d_v).
struct Embedding {
  VectorXc points;                ///< full length, zero on excluded vertices
  VectorXd degrees;               ///< d_v, full length
  std::vector<Index> included;    ///< non-isolated vertices, ascending
  std::vector<Index> excluded;    ///< isolated vertices
};

/// f1 is indexed like HermitianLaplacianOp with IsolatedPolicy::exclude.
Embedding spectral_embedding(const WeightedDigraph& g, const EigenPair& f1);

struct ClusterDiagnostics {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double residual1 = 0.0;
  double residual2 = 0.0;
  Index iterations1 = 0;
  Index iterations2 = 0;
  bool lambda2_computed = false;
  bool lambda2_converged = false;
  bool degenerate_gap = false;
  double phi = 0.0;
};

/// Output of k-means over an embedding.
///
/// cost is sum_j sum_{u in A_j} d_u ||F(u) - c_j||^2 for the returned centers,
/// which are the degree-weighted means of their clusters. The k-means backend
/// is a heuristic; any approximation ratio it achieves is an empirical
/// property, not something computed here.
struct Clustering {
  std::vector<int> labels;           ///< full length, kIsolatedLabel on excluded vertices
  int k = 0;
  std::vector<Complex> centers;      ///< empty for baselines embedded in higher dimension
  double cost = 0.0;
  std::vector<int> ordering;         ///< ordering[new_label] = label before order_clusters
  std::vector<double> initial_costs; ///< per restart, before Lloyd
  std::uint64_t seed = 0;
  ClusterDiagnostics diagnostics;

  Partition partition() const { return Partition(labels, k); }
};

Clustering weighted_kmeans(const Embedding& emb, int k, const KMeansConfig& cfg = {});

/// Largest k for which order_clusters enumerates all k! orderings.
inline constexpr int kExhaustiveOrderLimit = 8;

/// Relabels clusters by the ordering that maximizes the flow ratio: exhaustive
/// for k <= 8 (lexicographically first ordering among ties), greedy chain
/// extension above that. Cluster k-1 ends up as the source of the chain.
Clustering order_clusters(const WeightedDigraph& g, const Clustering& c);

struct SimpleHermOptions {
  bool compute_lambda2 = true;
  /// Called with the stage name as each stage finishes ("eigenvector",
  /// "lambda2", "kmeans", "ordering"). Used for timing only.
  std::function<void(std::string_view)> on_stage_done;
};

/// bottom eigenvector -> embedding -> weighted k-means -> flow ordering.
Clustering simple_herm(const WeightedDigraph& g, int k, const SolverConfig& solver_cfg = {},
                       const KMeansConfig& kmeans_cfg = {}, const SimpleHermOptions& options = {});

/// Approximate centers p^(j) = (beta / sqrt(k)) omega^j / sqrt(vol(S_j)).
std::vector<Complex> paper_centers(const WeightedDigraph& g, const Partition& p, int k, Complex beta);

struct CenterCostIdentity {
  double lhs = 0.0;  ///< sum_j sum_{u in S_j} d_u ||F(u) - p^(j)||^2
  double rhs = 0.0;  ///< ||f1 - beta y||^2
  Complex beta;
};

/// Both sides of the center/cost identity with beta = 1 / <f1, y>. f1 and y
/// are full length.
CenterCostIdentity center_cost_identity(const WeightedDigraph& g, const Partition& p,
                                        const VectorXc& f1, const VectorXc& y);

}  // namespace hermclust
