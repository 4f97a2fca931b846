#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "hermclust/flow.hpp"
#include "hermclust/spectral.hpp"

namespace hermclust {

struct SparsifierConfig {
  double alpha_s = 1.0;  ///< sampling constant
  double lambda2 = 0.0;  ///< must be positive; see estimate_lambda2()
  std::uint64_t seed = 0;
};

struct SamplingProbabilities {
  double p_u = 0.0;  ///< probability the source samples the edge
  double p_v = 0.0;  ///< probability the target samples the edge
  double p_e = 0.0;  ///< probability at least one endpoint does
};

/// p_u = min{w alpha_s ln n / (lambda2 d_out(u)), 1}, p_v likewise with
/// d_in(v), and p_e = p_u + p_v - p_u p_v.
SamplingProbabilities sampling_probabilities(const WeightedDigraph& g, Index edge,
                                             const SparsifierConfig& cfg);

struct SparsifiedGraph {
  WeightedDigraph graph;      ///< kept edges with weight w / p_e
  Index retained = 0;
  double expected_retained = 0.0;
  std::vector<Index> kept;    ///< indices into the input graph's edges
  std::vector<double> p_e;    ///< sampling probability of each kept edge
};

/// Keeps each edge independently with probability p_e and reweights it by
/// 1/p_e. One uniform per edge, drawn from a counter stream keyed on
/// (seed, edge index), so raising alpha_s never drops a kept edge.
SparsifiedGraph sparsify(const WeightedDigraph& g, const SparsifierConfig& cfg);

/// lambda_2 of the full graph's Hermitian Laplacian, for callers without an
/// external value. Reads every edge, so the sampling is no longer sublinear.
double estimate_lambda2(const WeightedDigraph& g, int k, const SolverConfig& solver_cfg = {});

struct PreservationReport {
  double phi_g = 0.0;
  double phi_h = 0.0;
  std::vector<double> cut_ratios;     ///< w_H(S_j, S_{j-1}) / w_G(S_j, S_{j-1}) for nonzero G cuts
  std::vector<double> volume_ratios;  ///< vol_H(S_j) / vol_G(S_j)
  double lambda2_g = 0.0;
  double lambda2_h = 0.0;
  Index edges_g = 0;
  Index edges_h = 0;
};

/// Compares G and H on a fixed partition. Makes no pass/fail decision.
/// lambda2_g may be passed in to skip its recomputation (NaN means compute).
PreservationReport preservation_report(const WeightedDigraph& g, const SparsifiedGraph& h,
                                       const Partition& p, int k, const SolverConfig& solver_cfg = {},
                                       double lambda2_g = std::numeric_limits<double>::quiet_NaN());

}  // namespace hermclust
