#include "hermclust/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace hermclust {

Embedding spectral_embedding(const WeightedDigraph& g, const EigenPair& f1) {
  Embedding emb;
  emb.degrees = g.degree();
  emb.points = VectorXc::Zero(g.num_vertices());
  for (Index u = 0; u < g.num_vertices(); ++u) (g.is_isolated(u) ? emb.excluded : emb.included).push_back(u);
  if (f1.vector.size() != static_cast<Index>(emb.included.size()))
    throw InputError("embedding: eigenvector has " + std::to_string(f1.vector.size()) + " entries for " +
                     std::to_string(emb.included.size()) + " non-isolated vertices");
  for (std::size_t i = 0; i < emb.included.size(); ++i) {
    const Index u = emb.included[i];
    emb.points[u] = f1.vector[static_cast<Index>(i)] / std::sqrt(g.degree()[u]);
    if (!std::isfinite(emb.points[u].real()) || !std::isfinite(emb.points[u].imag()))
      throw InputError("embedding: non-finite entry");
  }
  return emb;
}

Clustering weighted_kmeans(const Embedding& emb, int k, const KMeansConfig& cfg) {
  const auto m = static_cast<Index>(emb.included.size());
  MatrixXd pts(m, 2);
  VectorXd w(m);
  for (Index i = 0; i < m; ++i) {
    const Index u = emb.included[static_cast<std::size_t>(i)];
    pts(i, 0) = emb.points[u].real();
    pts(i, 1) = emb.points[u].imag();
    w[i] = emb.degrees[u];
  }
  const auto km = weighted_kmeans<double>(pts, w, k, cfg);

  Clustering c;
  c.k = k;
  c.seed = cfg.seed;
  c.cost = km.cost;
  c.initial_costs = km.initial_costs;
  c.labels.assign(static_cast<std::size_t>(emb.points.size()), kIsolatedLabel);
  for (Index i = 0; i < m; ++i)
    c.labels[static_cast<std::size_t>(emb.included[static_cast<std::size_t>(i)])] = km.labels[static_cast<std::size_t>(i)];
  for (int j = 0; j < k; ++j) c.centers.emplace_back(km.centers(j, 0), km.centers(j, 1));
  c.ordering.resize(static_cast<std::size_t>(k));
  std::iota(c.ordering.begin(), c.ordering.end(), 0);
  return c;
}

namespace {

double ordered_flow(const MatrixXd& cuts, const VectorXd& vol, const std::vector<int>& order) {
  double phi = 0.0;
  for (std::size_t j = 1; j < order.size(); ++j) {
    const int hi = order[j];
    const int lo = order[j - 1];
    phi += cuts(hi, lo) / (vol[hi] + vol[lo]);
  }
  return phi;
}

std::vector<int> exhaustive_order(const MatrixXd& cuts, const VectorXd& vol) {
  std::vector<int> order(static_cast<std::size_t>(vol.size()));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> best = order;
  double best_phi = ordered_flow(cuts, vol, order);
  // next_permutation walks orderings lexicographically, so the first maximizer is kept.
  while (std::next_permutation(order.begin(), order.end())) {
    const double phi = ordered_flow(cuts, vol, order);
    if (phi > best_phi + 1e-12 * std::max(1.0, best_phi)) {
      best_phi = phi;
      best = order;
    }
  }
  return best;
}

// Grows a chain from its best single cut, extending at whichever end gains most.
std::vector<int> greedy_order(const MatrixXd& cuts, const VectorXd& vol) {
  const auto k = static_cast<int>(vol.size());
  auto term = [&](int hi, int lo) { return cuts(hi, lo) / (vol[hi] + vol[lo]); };
  int best_lo = 0;
  int best_hi = 1;
  double best = -1.0;
  for (int lo = 0; lo < k; ++lo)
    for (int hi = 0; hi < k; ++hi)
      if (hi != lo && term(hi, lo) > best) {
        best = term(hi, lo);
        best_lo = lo;
        best_hi = hi;
      }
  std::vector<int> chain{best_lo, best_hi};
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  used[static_cast<std::size_t>(best_lo)] = used[static_cast<std::size_t>(best_hi)] = true;
  while (static_cast<int>(chain.size()) < k) {
    double gain = -1.0;
    int pick = -1;
    bool at_top = false;
    for (int x = 0; x < k; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      const double below = term(chain.front(), x);  // x becomes the new sink
      const double above = term(x, chain.back());   // x becomes the new source
      if (below > gain) {
        gain = below;
        pick = x;
        at_top = false;
      }
      if (above > gain) {
        gain = above;
        pick = x;
        at_top = true;
      }
    }
    used[static_cast<std::size_t>(pick)] = true;
    if (at_top) {
      chain.push_back(pick);
    } else {
      chain.insert(chain.begin(), pick);
    }
  }
  return chain;
}

}  // namespace

Clustering order_clusters(const WeightedDigraph& g, const Clustering& c) {
  if (c.k <= 1) return c;
  const Partition p = c.partition();
  const MatrixXd cuts = cluster_cut_matrix(g, p);
  const VectorXd vol = cluster_volumes(g, p);
  const std::vector<int> order = c.k <= kExhaustiveOrderLimit ? exhaustive_order(cuts, vol) : greedy_order(cuts, vol);

  std::vector<int> position(static_cast<std::size_t>(c.k));
  for (int j = 0; j < c.k; ++j) position[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] = j;

  Clustering out = c;
  for (auto& l : out.labels)
    if (l != kIsolatedLabel) l = position[static_cast<std::size_t>(l)];
  if (!c.centers.empty())
    for (int j = 0; j < c.k; ++j) out.centers[static_cast<std::size_t>(j)] = c.centers[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
  for (int j = 0; j < c.k; ++j)
    out.ordering[static_cast<std::size_t>(j)] = c.ordering.empty() ? order[static_cast<std::size_t>(j)]
                                                                    : c.ordering[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
  out.diagnostics.phi = ordered_flow(cuts, vol, order);
  return out;
}

Clustering simple_herm(const WeightedDigraph& g, int k, const SolverConfig& solver_cfg,
                       const KMeansConfig& kmeans_cfg, const SimpleHermOptions& options) {
  const HermitianLaplacianOp op(g, std::max(k, 2));
  if (op.dim() < k)
    throw InputError("k = " + std::to_string(k) + " exceeds the " + std::to_string(op.dim()) +
                     " non-isolated vertices");
  auto done = [&](std::string_view stage) {
    if (options.on_stage_done) options.on_stage_done(stage);
  };
  const EigenPair f1 = bottom_eigenpair(op, solver_cfg);
  done("eigenvector");

  ClusterDiagnostics diag;
  diag.lambda1 = f1.value;
  diag.residual1 = f1.residual;
  diag.iterations1 = f1.iterations;
  if (options.compute_lambda2) {
    SolverConfig lenient = solver_cfg;
    lenient.require_convergence = false;
    const EigenPair f2 = second_eigenpair(op, f1, lenient);
    diag.lambda2 = f2.value;
    diag.residual2 = f2.residual;
    diag.iterations2 = f2.iterations;
    diag.lambda2_computed = true;
    diag.lambda2_converged = f2.converged;
    diag.degenerate_gap = f2.value - f1.value < kDegenerateGap;
    done("lambda2");
  }

  const Embedding emb = spectral_embedding(g, f1);
  const Clustering raw = weighted_kmeans(emb, k, kmeans_cfg);
  done("kmeans");
  Clustering c = order_clusters(g, raw);
  done("ordering");
  const double phi = c.diagnostics.phi;
  c.diagnostics = diag;
  c.diagnostics.phi = phi;
  return c;
}

std::vector<Complex> paper_centers(const WeightedDigraph& g, const Partition& p, int k, Complex beta) {
  if (p.k() != k) throw InputError("paper_centers: partition has a different k");
  const VectorXd vol = cluster_volumes(g, p);
  const RootOfUnity root = root_of_unity(k);
  std::vector<Complex> centers;
  for (int j = 0; j < k; ++j) {
    if (!(vol[j] > 0.0)) throw InputError("paper_centers: cluster " + std::to_string(j) + " has zero volume");
    centers.push_back(beta / std::sqrt(static_cast<double>(k)) * root.pow(j) / std::sqrt(vol[j]));
  }
  return centers;
}

CenterCostIdentity center_cost_identity(const WeightedDigraph& g, const Partition& p,
                                        const VectorXc& f1, const VectorXc& y) {
  p.check_against(g);
  if (f1.size() != g.num_vertices() || y.size() != g.num_vertices())
    throw InputError("center_cost_identity expects full-length vectors");
  const AlignmentReport align = indicator_alignment(f1, y);
  const auto centers = paper_centers(g, p, p.k(), align.beta);
  CenterCostIdentity out;
  out.beta = align.beta;
  for (Index u = 0; u < g.num_vertices(); ++u) {
    if (p[u] == kIsolatedLabel || g.is_isolated(u)) continue;
    const double d = g.degree()[u];
    out.lhs += d * std::norm(f1[u] / std::sqrt(d) - centers[static_cast<std::size_t>(p[u])]);
  }
  out.rhs = align.f1_error;
  return out;
}

}  // namespace hermclust
