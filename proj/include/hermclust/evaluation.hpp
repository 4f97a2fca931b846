#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hermclust/flow.hpp"

namespace hermclust {

/// Co-occurrence counts of two labelings over the same vertices.
struct ContingencyTable {
  std::vector<int> row_labels;  ///< distinct labels of the first labeling, ascending
  std::vector<int> col_labels;
  std::vector<std::vector<Index>> counts;
  std::vector<Index> row_sums;
  std::vector<Index> col_sums;
  Index total = 0;
};

ContingencyTable contingency_table(std::span<const int> a, std::span<const int> b);

/// Chance-adjusted Rand index. Labels are arbitrary ints (kIsolatedLabel is
/// just another label). When both labelings are trivial in the same way the
/// index is defined as 1.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);
double adjusted_rand_index(const Partition& a, const Partition& b);

enum class DifferenceWeight { count, volume };

struct MatchingResult {
  std::vector<int> permutation;  ///< cluster of a -> matched cluster of b, -1 if unmatched
  double total_symmetric_difference = 0.0;
};

/// Solves min-cost assignment on a square matrix; returns column of each row.
std::vector<int> solve_assignment(const MatrixXd& cost);

/// Bijection between clusters minimizing sum_j |A_j sym-diff B_pi(j)|.
///
/// Labels range over 0..ka-1 and 0..kb-1 (kIsolatedLabel vertices belong to
/// no cluster) and clusters may be empty. With ka != kb the smaller side is
/// padded with empty clusters, so unmatched clusters count wholly.
/// `weights` (vertex weights) is empty for counting.
MatchingResult match_labels(std::span<const int> a, int ka, std::span<const int> b, int kb,
                            std::span<const double> weights = {});

/// Partition-level wrapper; volume weighting needs the graph for degrees.
MatchingResult best_matching(const Partition& a, const Partition& b,
                             DifferenceWeight weight = DifferenceWeight::count,
                             const WeightedDigraph* g = nullptr);

/// One clustering result keyed by external vertex ids (e.g. country codes).
struct Snapshot {
  std::vector<std::string> ids;
  std::vector<int> labels;      ///< kIsolatedLabel marks an unclustered vertex
  int k = 0;
  std::vector<double> weights;  ///< per-vertex degree, needed for volume weighting
};

/// Best-matching symmetric difference between each pair of consecutive
/// snapshots, over the vertices clustered in both. Volume weighting uses the
/// later snapshot's degrees.
std::vector<double> drift_series(std::span<const Snapshot> snapshots,
                                 DifferenceWeight weight = DifferenceWeight::count);

}  // namespace hermclust
