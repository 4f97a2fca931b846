#include "hermclust/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace hermclust {

namespace {

std::vector<Index> active_vertices(const WeightedDigraph& g) {
  std::vector<Index> active;
  for (Index u = 0; u < g.num_vertices(); ++u)
    if (!g.is_isolated(u)) active.push_back(u);
  return active;
}

void check_guard(const WeightedDigraph& g, int k, const BaselineConfig& cfg) {
  if (g.num_vertices() > cfg.guard)
    throw SizeGuardError("baseline on " + std::to_string(g.num_vertices()) + " vertices exceeds the guard of " +
                         std::to_string(cfg.guard));
  if (k < 1) throw InputError("baseline needs k >= 1");
}

Clustering cluster_rows(const WeightedDigraph& g, const std::vector<Index>& active, const MatrixXd& embedding,
                        int k, const KMeansConfig& cfg) {
  if (static_cast<Index>(active.size()) < k)
    throw InputError("k = " + std::to_string(k) + " exceeds the non-isolated vertex count");
  const auto km = weighted_kmeans<double>(embedding, VectorXd::Ones(embedding.rows()), k, cfg);
  Clustering c;
  c.k = k;
  c.seed = cfg.seed;
  c.cost = km.cost;
  c.initial_costs = km.initial_costs;
  c.labels.assign(static_cast<std::size_t>(g.num_vertices()), kIsolatedLabel);
  for (std::size_t i = 0; i < active.size(); ++i) c.labels[static_cast<std::size_t>(active[i])] = km.labels[i];
  c.ordering.resize(static_cast<std::size_t>(k));
  std::iota(c.ordering.begin(), c.ordering.end(), 0);
  return order_clusters(g, c);
}

// Column indices of `values` sorted by descending key, stable on index.
template <typename Key>
std::vector<Index> top_columns(const VectorXd& values, Index count, Key key) {
  std::vector<Index> idx(static_cast<std::size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) { return key(values[a]) > key(values[b]); });
  idx.resize(static_cast<std::size_t>(std::min(count, values.size())));
  return idx;
}

}  // namespace

Clustering dd_sym_baseline(const WeightedDigraph& g, int k, const BaselineConfig& cfg) {
  check_guard(g, k, cfg);
  const MatrixXd m = dense_adjacency(g, cfg.guard);
  const MatrixXd a_full = m.transpose() * m + m * m.transpose();
  const VectorXd deg_full = a_full.rowwise().sum();
  std::vector<Index> active;
  for (Index u = 0; u < g.num_vertices(); ++u)
    if (deg_full[u] > 0.0) active.push_back(u);
  const auto na = static_cast<Index>(active.size());
  VectorXd inv_sqrt(na);
  MatrixXd s(na, na);
  for (Index i = 0; i < na; ++i) inv_sqrt[i] = 1.0 / std::sqrt(deg_full[active[static_cast<std::size_t>(i)]]);
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < na; ++j)
      s(i, j) = inv_sqrt[i] * a_full(active[static_cast<std::size_t>(i)], active[static_cast<std::size_t>(j)]) * inv_sqrt[j];

  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(s);
  if (solver.info() != Eigen::Success) throw Error("DD-SYM eigendecomposition failed");
  const auto cols = top_columns(solver.eigenvalues(), k, [](double x) { return x; });
  MatrixXd embedding(na, static_cast<Index>(cols.size()));
  // Random-walk eigenvectors of D^{-1} A are D^{-1/2} times the symmetric ones.
  for (std::size_t c = 0; c < cols.size(); ++c)
    embedding.col(static_cast<Index>(c)) = inv_sqrt.cwiseProduct(solver.eigenvectors().col(cols[c]));
  return cluster_rows(g, active, embedding, k, cfg.kmeans);
}

Clustering herm_rw_baseline(const WeightedDigraph& g, int k, const BaselineConfig& cfg) {
  check_guard(g, k, cfg);
  const auto active = active_vertices(g);
  const auto na = static_cast<Index>(active.size());
  std::vector<Index> slot(static_cast<std::size_t>(g.num_vertices()), -1);
  for (Index i = 0; i < na; ++i) slot[static_cast<std::size_t>(active[static_cast<std::size_t>(i)])] = i;
  VectorXd inv_sqrt(na);
  for (Index i = 0; i < na; ++i) inv_sqrt[i] = 1.0 / std::sqrt(g.degree()[active[static_cast<std::size_t>(i)]]);

  MatrixXc h = MatrixXc::Zero(na, na);
  const Complex i_unit(0.0, 1.0);
  for (const Edge& e : g.edges()) {
    const Index u = slot[static_cast<std::size_t>(e.src)];
    const Index v = slot[static_cast<std::size_t>(e.dst)];
    const Complex entry = i_unit * e.weight * inv_sqrt[u] * inv_sqrt[v];
    h(u, v) += entry;
    h(v, u) += std::conj(entry);
  }
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(h);
  if (solver.info() != Eigen::Success) throw Error("Herm-RW eigendecomposition failed");
  const Index count = (k + 1) / 2;
  const auto cols = top_columns(solver.eigenvalues(), count, [](double x) { return std::abs(x); });
  MatrixXd embedding(na, 2 * static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const VectorXc vec = inv_sqrt.cast<Complex>().cwiseProduct(solver.eigenvectors().col(cols[c]));
    embedding.col(2 * static_cast<Index>(c)) = vec.real();
    embedding.col(2 * static_cast<Index>(c) + 1) = vec.imag();
  }
  return cluster_rows(g, active, embedding, k, cfg.kmeans);
}

}  // namespace hermclust
