#include "hermclust/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hermclust/random.hpp"

namespace hermclust {

namespace {

constexpr std::uint64_t kSamplingStream = 0x5b4a7e;

void check_config(const SparsifierConfig& cfg) {
  if (!(cfg.alpha_s > 0.0)) throw InputError("sparsifier alpha_s must be positive");
  if (!(cfg.lambda2 > 0.0)) throw InputError("sparsifier lambda2 must be positive");
}

}  // namespace

SamplingProbabilities sampling_probabilities(const WeightedDigraph& g, Index edge,
                                             const SparsifierConfig& cfg) {
  check_config(cfg);
  const Edge& e = g.edge(edge);
  const double d_out = g.out_degree()[e.src];
  const double d_in = g.in_degree()[e.dst];
  if (!(d_out > 0.0) || !(d_in > 0.0)) throw InputError("edge endpoint has zero degree");
  const double scale = e.weight * cfg.alpha_s * std::log(static_cast<double>(g.num_vertices())) / cfg.lambda2;
  SamplingProbabilities p;
  p.p_u = std::min(scale / d_out, 1.0);
  p.p_v = std::min(scale / d_in, 1.0);
  p.p_e = p.p_u + p.p_v - p.p_u * p.p_v;
  return p;
}

SparsifiedGraph sparsify(const WeightedDigraph& g, const SparsifierConfig& cfg) {
  check_config(cfg);
  SparsifiedGraph out;
  std::vector<Edge> kept;
  for (Index e = 0; e < g.num_edges(); ++e) {
    const double p_e = sampling_probabilities(g, e, cfg).p_e;
    out.expected_retained += p_e;
    if (counter_uniform(cfg.seed, kSamplingStream, static_cast<std::uint64_t>(e)) < p_e) {
      const Edge& ed = g.edge(e);
      kept.push_back({ed.src, ed.dst, ed.weight / p_e});
      out.kept.push_back(e);
      out.p_e.push_back(p_e);
    }
  }
  out.retained = static_cast<Index>(kept.size());
  out.graph = WeightedDigraph(g.num_vertices(), std::move(kept));
  return out;
}

double estimate_lambda2(const WeightedDigraph& g, int k, const SolverConfig& solver_cfg) {
  const HermitianLaplacianOp op(g, k);
  const EigenPair f1 = bottom_eigenpair(op, solver_cfg);
  SolverConfig lenient = solver_cfg;
  lenient.require_convergence = false;
  return second_eigenpair(op, f1, lenient).value;
}

PreservationReport preservation_report(const WeightedDigraph& g, const SparsifiedGraph& h,
                                       const Partition& p, int k, const SolverConfig& solver_cfg,
                                       double lambda2_g) {
  p.check_against(g);
  if (h.graph.num_vertices() != g.num_vertices())
    throw InputError("sparsified graph has a different vertex count");
  PreservationReport r;
  r.edges_g = g.num_edges();
  r.edges_h = h.graph.num_edges();
  const MatrixXd cuts_g = cluster_cut_matrix(g, p);
  const MatrixXd cuts_h = cluster_cut_matrix(h.graph, p);
  const VectorXd vol_g = cluster_volumes(g, p);
  const VectorXd vol_h = cluster_volumes(h.graph, p);
  r.phi_g = flow_ratio(cuts_g, vol_g);
  r.phi_h = flow_ratio(cuts_h, vol_h);
  for (int j = 1; j < p.k(); ++j)
    if (cuts_g(j, j - 1) > 0.0) r.cut_ratios.push_back(cuts_h(j, j - 1) / cuts_g(j, j - 1));
  for (int j = 0; j < p.k(); ++j) r.volume_ratios.push_back(vol_h[j] / vol_g[j]);
  r.lambda2_g = std::isnan(lambda2_g) ? estimate_lambda2(g, k, solver_cfg) : lambda2_g;
  r.lambda2_h = estimate_lambda2(h.graph, k, solver_cfg);
  return r;
}

}  // namespace hermclust
