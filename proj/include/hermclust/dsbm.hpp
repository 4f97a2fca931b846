#pragma once

#include <cstdint>

#include "hermclust/flow.hpp"

namespace hermclust {

enum class DsbmVariant {
  all_pairs,  ///< every cross-block pair may connect; only consecutive blocks are biased
  path_only,  ///< cross-block edges only between consecutive blocks
};

/// Directed stochastic block model with a planted chain of k blocks.
struct DsbmParams {
  Index n = 0;       ///< total vertex count, k equal blocks of n/k
  int k = 2;
  double p = 0.0;    ///< intra-block edge probability
  double q = 0.0;    ///< inter-block edge probability
  double eta = 0.5;  ///< probability a consecutive-block edge points along the chain
  DsbmVariant variant = DsbmVariant::all_pairs;
  std::uint64_t seed = 0;

  void validate() const;
};

struct DsbmInstance {
  WeightedDigraph graph;
  /// Block b is reported as label k-1-b: the generator orients edges from
  /// block j to block j+1, and the flow ratio scores S_j -> S_{j-1}.
  Partition truth;
};

/// Unit-weight DSBM sample. Pair (u, v) draws its randomness from a counter
/// stream keyed on the pair index, so output depends only on the parameters.
DsbmInstance generate(const DsbmParams& params);

struct BinomialEstimate {
  Index trials = 0;
  Index successes = 0;
  double frequency = 0.0;
  double ci_low = 0.0;   ///< exact (Clopper-Pearson) bounds
  double ci_high = 1.0;
  double expected = 0.0;

  /// |frequency - expected| within 3 binomial standard deviations.
  bool within_three_sigma() const;
};

struct DsbmStatistics {
  BinomialEstimate intra_edges;        ///< intra-block pairs that got an edge (vs p)
  BinomialEstimate intra_forward;      ///< intra edges pointing from lower to higher id (vs 1/2)
  BinomialEstimate consecutive_edges;  ///< consecutive-block pairs with an edge (vs q)
  BinomialEstimate consecutive_forward;///< those pointing block j -> j+1 (vs eta)
  BinomialEstimate distant_edges;      ///< non-consecutive cross pairs with an edge (q or 0)
  BinomialEstimate distant_forward;    ///< those pointing to the later block (vs 1/2)
};

/// Pools edge and direction frequencies over `trials` seeds (seed, seed+1, ...).
DsbmStatistics empirical_check(const DsbmParams& params, int trials, double confidence = 0.99);

/// Exact two-sided binomial confidence interval.
std::pair<double, double> clopper_pearson(Index successes, Index trials, double confidence);

}  // namespace hermclust
