#pragma once

#include <vector>

#include "hermclust/hermitian.hpp"

namespace hermclust {

/// Assignment of vertices to k ordered clusters S_0..S_{k-1}.
///
/// Isolated vertices carry kIsolatedLabel. Every cluster index is used at
/// least once.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<int> labels, int k);

  int k() const noexcept { return k_; }
  Index size() const noexcept { return static_cast<Index>(labels_.size()); }
  const std::vector<int>& labels() const noexcept { return labels_; }
  int operator[](Index u) const { return labels_[static_cast<std::size_t>(u)]; }

  /// Members of cluster j as a sorted id list.
  std::vector<Index> members(int j) const;

  /// Throws unless the partition spans g's vertices with every non-isolated
  /// vertex labelled and every cluster of positive volume.
  void check_against(const WeightedDigraph& g) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

/// k x k matrix C with C(j, l) = w(S_j, S_l), and the cluster volumes.
MatrixXd cluster_cut_matrix(const WeightedDigraph& g, const Partition& p);
VectorXd cluster_volumes(const WeightedDigraph& g, const Partition& p);

struct CutTerm {
  double cut = 0.0;         ///< w(S_j, S_{j-1})
  double volume_sum = 0.0;  ///< vol(S_j) + vol(S_{j-1})
};

struct FlowReport {
  double phi = 0.0;
  std::vector<CutTerm> per_cut;  ///< j = 1..k-1
  double lemma1_bound = 1.0;     ///< 1 - (4/k) phi
};

/// Flow ratio sum_{j>=1} w(S_j, S_{j-1}) / (vol(S_j) + vol(S_{j-1})).
/// Edges are scored from the higher index to the next lower one.
FlowReport flow_ratio(const WeightedDigraph& g, const Partition& p);

/// Same objective from a precomputed cut matrix and volumes.
double flow_ratio(const MatrixXd& cuts, const VectorXd& volumes);

struct BruteForceGuard {
  Index max_vertices = 12;
  int max_k = 4;
};

struct ThetaResult {
  double theta = 0.0;
  Partition argmax;
};

/// Exact maximum of the flow ratio over all surjective k-labelings of the
/// non-isolated vertices. Among maximizers the lexicographically smallest
/// label vector wins.
ThetaResult theta_k_bruteforce(const WeightedDigraph& g, int k, BruteForceGuard guard = {});

/// y = k^{-1/2} sum_j D^{1/2} chi_j / ||D^{1/2} chi_j||, chi_j = omega^j on S_j.
/// Full length; zero on isolated vertices.
VectorXc indicator_vector_y(const WeightedDigraph& g, const Partition& p, int k);

/// y* L y evaluated from cluster cuts and volumes alone:
/// 1 - (1/k) sum_{j,l} 2 w(S_j,S_l) cos(2 pi (l+1-j) / order) / sqrt(vol_j vol_l).
double indicator_rayleigh_closed_form(const WeightedDigraph& g, const Partition& p);

struct GammaReport {
  double theta_k = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gamma_k = 0.0;
  bool infinite = false;  ///< theta_k >= k/4, so the denominator vanishes
};

/// gamma_k = lambda2 / (1 - (4/k) theta).
GammaReport gamma_k(int k, double theta, double lambda2, double lambda1 = 0.0);

/// Projection of y onto the bottom eigenvector and the two approximation errors.
struct AlignmentReport {
  Complex alpha;             ///< <f1, y> = f1* y
  Complex beta;              ///< 1 / alpha
  double y_error = 0.0;      ///< ||y - alpha f1||^2
  double f1_error = 0.0;     ///< ||f1 - beta y||^2
};

/// Both vectors in the same index space (typically full length).
AlignmentReport indicator_alignment(const VectorXc& f1, const VectorXc& y);

}  // namespace hermclust
