#include "hermclust/flow.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hermclust {

Partition::Partition(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {
  if (k < 1) throw InputError("partition needs k >= 1");
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  for (int l : labels_) {
    if (l == kIsolatedLabel) continue;
    if (l < 0 || l >= k) throw InputError("partition label " + std::to_string(l) + " outside 0.." + std::to_string(k - 1));
    used[static_cast<std::size_t>(l)] = true;
  }
  for (int j = 0; j < k; ++j)
    if (!used[static_cast<std::size_t>(j)]) throw InputError("partition cluster " + std::to_string(j) + " is empty");
}

std::vector<Index> Partition::members(int j) const {
  std::vector<Index> out;
  for (std::size_t u = 0; u < labels_.size(); ++u)
    if (labels_[u] == j) out.push_back(static_cast<Index>(u));
  return out;
}

void Partition::check_against(const WeightedDigraph& g) const {
  if (size() != g.num_vertices())
    throw InputError("partition has " + std::to_string(size()) + " labels for a graph of " +
                     std::to_string(g.num_vertices()) + " vertices");
  for (Index u = 0; u < size(); ++u)
    if ((*this)[u] == kIsolatedLabel && !g.is_isolated(u))
      throw InputError("non-isolated vertex " + std::to_string(u) + " is unlabelled");
  const VectorXd vol = cluster_volumes(g, *this);
  for (int j = 0; j < k_; ++j)
    if (!(vol[j] > 0.0)) throw InputError("cluster " + std::to_string(j) + " has zero volume");
}

MatrixXd cluster_cut_matrix(const WeightedDigraph& g, const Partition& p) {
  MatrixXd c = MatrixXd::Zero(p.k(), p.k());
  for (const Edge& e : g.edges()) {
    const int a = p[e.src];
    const int b = p[e.dst];
    if (a != kIsolatedLabel && b != kIsolatedLabel) c(a, b) += e.weight;
  }
  return c;
}

VectorXd cluster_volumes(const WeightedDigraph& g, const Partition& p) {
  VectorXd vol = VectorXd::Zero(p.k());
  for (Index u = 0; u < p.size(); ++u)
    if (p[u] != kIsolatedLabel) vol[p[u]] += g.degree()[u];
  return vol;
}

double flow_ratio(const MatrixXd& cuts, const VectorXd& volumes) {
  double phi = 0.0;
  for (Index j = 1; j < volumes.size(); ++j) phi += cuts(j, j - 1) / (volumes[j] + volumes[j - 1]);
  return phi;
}

FlowReport flow_ratio(const WeightedDigraph& g, const Partition& p) {
  p.check_against(g);
  const MatrixXd cuts = cluster_cut_matrix(g, p);
  const VectorXd vol = cluster_volumes(g, p);
  FlowReport r;
  for (int j = 1; j < p.k(); ++j) r.per_cut.push_back({cuts(j, j - 1), vol[j] + vol[j - 1]});
  r.phi = flow_ratio(cuts, vol);
  r.lemma1_bound = 1.0 - 4.0 / p.k() * r.phi;
  return r;
}

ThetaResult theta_k_bruteforce(const WeightedDigraph& g, int k, BruteForceGuard guard) {
  std::vector<Index> active;
  for (Index u = 0; u < g.num_vertices(); ++u)
    if (!g.is_isolated(u)) active.push_back(u);
  const auto n = static_cast<Index>(active.size());
  if (k < 1) throw InputError("theta_k needs k >= 1");
  if (n > guard.max_vertices || k > guard.max_k)
    throw SizeGuardError("brute-force theta_k limited to " + std::to_string(guard.max_vertices) +
                         " vertices and k <= " + std::to_string(guard.max_k));
  if (n < k) throw InputError("fewer non-isolated vertices than clusters");

  // Odometer over label vectors of the active vertices, last vertex fastest,
  // which visits labelings in lexicographic order. Cut matrix, volumes and
  // cluster sizes are updated incrementally as single vertices move.
  std::vector<Index> slot(static_cast<std::size_t>(g.num_vertices()), -1);
  for (Index i = 0; i < n; ++i) slot[static_cast<std::size_t>(active[static_cast<std::size_t>(i)])] = i;
  std::vector<int> digit(static_cast<std::size_t>(n), 0);
  std::vector<Index> count(static_cast<std::size_t>(k), 0);
  count[0] = n;
  MatrixXd cuts = MatrixXd::Zero(k, k);
  cuts(0, 0) = g.total_weight();
  VectorXd vol = VectorXd::Zero(k);
  for (Index u : active) vol[0] += g.degree()[u];

  auto move = [&](Index i, int to) {
    const Index u = active[static_cast<std::size_t>(i)];
    const int from = digit[static_cast<std::size_t>(i)];
    const double d = g.degree()[u];
    vol[from] -= d;
    vol[to] += d;
    --count[static_cast<std::size_t>(from)];
    ++count[static_cast<std::size_t>(to)];
    for (Index e : g.out_edges(u)) {
      const Edge& ed = g.edge(e);
      const int l = digit[static_cast<std::size_t>(slot[static_cast<std::size_t>(ed.dst)])];
      cuts(from, l) -= ed.weight;
      cuts(to, l) += ed.weight;
    }
    for (Index e : g.in_edges(u)) {
      const Edge& ed = g.edge(e);
      const int l = digit[static_cast<std::size_t>(slot[static_cast<std::size_t>(ed.src)])];
      cuts(l, from) -= ed.weight;
      cuts(l, to) += ed.weight;
    }
    digit[static_cast<std::size_t>(i)] = to;
  };

  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> best_digits;
  while (true) {
    bool surjective = true;
    for (Index c : count) surjective = surjective && c > 0;
    if (surjective) {
      const double phi = flow_ratio(cuts, vol);
      // Incremental sums drift by rounding; treat near-equal values as ties.
      if (best_digits.empty() || phi > best + 1e-12 * std::max(1.0, best)) {
        best = phi;
        best_digits = digit;
      }
    }
    Index i = n - 1;
    while (i >= 0 && digit[static_cast<std::size_t>(i)] == k - 1) {
      move(i, 0);
      --i;
    }
    if (i < 0) break;
    move(i, digit[static_cast<std::size_t>(i)] + 1);
  }

  std::vector<int> labels(static_cast<std::size_t>(g.num_vertices()), kIsolatedLabel);
  for (Index i = 0; i < n; ++i)
    labels[static_cast<std::size_t>(active[static_cast<std::size_t>(i)])] = best_digits[static_cast<std::size_t>(i)];
  ThetaResult result{0.0, Partition(std::move(labels), k)};
  result.theta = flow_ratio(g, result.argmax).phi;  // exact re-evaluation
  return result;
}

VectorXc indicator_vector_y(const WeightedDigraph& g, const Partition& p, int k) {
  if (p.k() != k) throw InputError("indicator vector: partition has a different k");
  p.check_against(g);
  const RootOfUnity root = root_of_unity(k);
  const VectorXd vol = cluster_volumes(g, p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  VectorXc y = VectorXc::Zero(g.num_vertices());
  for (Index u = 0; u < g.num_vertices(); ++u) {
    const int j = p[u];
    if (j == kIsolatedLabel) continue;
    y[u] = scale * root.pow(j) * std::sqrt(g.degree()[u] / vol[j]);
  }
  return y;
}

double indicator_rayleigh_closed_form(const WeightedDigraph& g, const Partition& p) {
  p.check_against(g);
  const int k = p.k();
  const RootOfUnity root = root_of_unity(k);
  const MatrixXd cuts = cluster_cut_matrix(g, p);
  const VectorXd vol = cluster_volumes(g, p);
  double sum = 0.0;
  for (int j = 0; j < k; ++j) {
    for (int l = 0; l < k; ++l) {
      const double angle = 2.0 * std::numbers::pi * (l + 1 - j) / root.order;
      sum += 2.0 * cuts(j, l) * std::cos(angle) / std::sqrt(vol[j] * vol[l]);
    }
  }
  return 1.0 - sum / k;
}

GammaReport gamma_k(int k, double theta, double lambda2, double lambda1) {
  GammaReport r;
  r.theta_k = theta;
  r.lambda1 = lambda1;
  r.lambda2 = lambda2;
  const double denominator = 1.0 - 4.0 / k * theta;
  if (denominator <= 0.0) {
    r.infinite = true;
    r.gamma_k = std::numeric_limits<double>::infinity();
  } else {
    r.gamma_k = lambda2 / denominator;
  }
  return r;
}

AlignmentReport indicator_alignment(const VectorXc& f1, const VectorXc& y) {
  if (f1.size() != y.size()) throw InputError("alignment: vectors differ in length");
  AlignmentReport r;
  r.alpha = f1.dot(y);
  if (r.alpha == Complex(0.0, 0.0)) throw InputError("alignment: <f1, y> is zero");
  r.beta = 1.0 / r.alpha;
  r.y_error = (y - r.alpha * f1).squaredNorm();
  r.f1_error = (f1 - r.beta * y).squaredNorm();
  return r;
}

}  // namespace hermclust
