#include "hermclust/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

namespace hermclust {

ContingencyTable contingency_table(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw InputError("labelings differ in size");
  ContingencyTable t;
  t.row_labels.assign(a.begin(), a.end());
  t.col_labels.assign(b.begin(), b.end());
  for (auto* v : {&t.row_labels, &t.col_labels}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  auto index_of = [](const std::vector<int>& sorted, int label) {
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), label) - sorted.begin());
  };
  t.counts.assign(t.row_labels.size(), std::vector<Index>(t.col_labels.size(), 0));
  t.row_sums.assign(t.row_labels.size(), 0);
  t.col_sums.assign(t.col_labels.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto r = index_of(t.row_labels, a[i]);
    const auto c = index_of(t.col_labels, b[i]);
    ++t.counts[r][c];
    ++t.row_sums[r];
    ++t.col_sums[c];
  }
  t.total = static_cast<Index>(a.size());
  return t;
}

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  const auto t = contingency_table(a, b);
  // Integer pair counts keep the result exactly symmetric in (a, b).
  auto pairs = [](Index x) { return x * (x - 1) / 2; };
  Index index = 0;
  for (const auto& row : t.counts)
    for (Index c : row) index += pairs(c);
  Index rows = 0;
  Index cols = 0;
  for (Index s : t.row_sums) rows += pairs(s);
  for (Index s : t.col_sums) cols += pairs(s);
  const Index all = pairs(t.total);
  if (all == 0) return 1.0;
  const double expected = static_cast<double>(rows) * static_cast<double>(cols) / static_cast<double>(all);
  const double maximum = 0.5 * (static_cast<double>(rows) + static_cast<double>(cols));
  if (maximum == expected) return 1.0;
  return (static_cast<double>(index) - expected) / (maximum - expected);
}

double adjusted_rand_index(const Partition& a, const Partition& b) {
  return adjusted_rand_index(std::span<const int>(a.labels()), std::span<const int>(b.labels()));
}

std::vector<int> solve_assignment(const MatrixXd& cost) {
  // Hungarian method with row/column potentials, O(n^3).
  const Index n = cost.rows();
  if (cost.cols() != n) throw InputError("assignment cost matrix must be square");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<double> v(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<Index> match(static_cast<std::size_t>(n + 1), 0);  // column -> row (1-based)
  std::vector<Index> way(static_cast<std::size_t>(n + 1), 0);
  for (Index i = 1; i <= n; ++i) {
    match[0] = i;
    Index j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n + 1), kInf);
    std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
    do {
      used[static_cast<std::size_t>(j0)] = true;
      const Index i0 = match[static_cast<std::size_t>(j0)];
      double delta = kInf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        const auto js = static_cast<std::size_t>(j);
        if (used[js]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[js];
        if (cur < minv[js]) {
          minv[js] = cur;
          way[js] = j0;
        }
        if (minv[js] < delta) {
          delta = minv[js];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        const auto js = static_cast<std::size_t>(j);
        if (used[js]) {
          u[static_cast<std::size_t>(match[js])] += delta;
          v[js] -= delta;
        } else {
          minv[js] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const Index j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(static_cast<std::size_t>(n), -1);
  for (Index j = 1; j <= n; ++j)
    assignment[static_cast<std::size_t>(match[static_cast<std::size_t>(j)] - 1)] = static_cast<int>(j - 1);
  return assignment;
}

MatchingResult match_labels(std::span<const int> a, int ka, std::span<const int> b, int kb,
                            std::span<const double> weights) {
  if (a.size() != b.size()) throw InputError("matching: labelings differ in size");
  if (!weights.empty() && weights.size() != a.size()) throw InputError("matching: one weight per vertex required");
  const int size = std::max(ka, kb);
  VectorXd size_a = VectorXd::Zero(size);
  VectorXd size_b = VectorXd::Zero(size);
  MatrixXd overlap = MatrixXd::Zero(size, size);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    const int la = a[i];
    const int lb = b[i];
    if ((la != kIsolatedLabel && (la < 0 || la >= ka)) || (lb != kIsolatedLabel && (lb < 0 || lb >= kb)))
      throw InputError("matching: label out of range");
    if (la != kIsolatedLabel) size_a[la] += w;
    if (lb != kIsolatedLabel) size_b[lb] += w;
    if (la != kIsolatedLabel && lb != kIsolatedLabel) overlap(la, lb) += w;
  }
  MatrixXd cost(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) cost(i, j) = size_a[i] + size_b[j] - 2.0 * overlap(i, j);

  const auto assignment = solve_assignment(cost);
  MatchingResult r;
  r.permutation.assign(static_cast<std::size_t>(ka), -1);
  for (int i = 0; i < size; ++i) {
    const int j = assignment[static_cast<std::size_t>(i)];
    r.total_symmetric_difference += cost(i, j);
    if (i < ka && j < kb) r.permutation[static_cast<std::size_t>(i)] = j;
  }
  return r;
}

MatchingResult best_matching(const Partition& a, const Partition& b, DifferenceWeight weight,
                             const WeightedDigraph* g) {
  if (a.size() != b.size()) throw InputError("matching: partitions differ in size");
  std::vector<double> w;
  if (weight == DifferenceWeight::volume) {
    if (!g) throw InputError("volume-weighted matching needs the graph");
    if (g->num_vertices() != a.size()) throw InputError("matching: graph size differs from partitions");
    w.assign(g->degree().begin(), g->degree().end());
  }
  return match_labels(a.labels(), a.k(), b.labels(), b.k(), w);
}

std::vector<double> drift_series(std::span<const Snapshot> snapshots, DifferenceWeight weight) {
  if (snapshots.size() < 2) throw InputError("drift series needs at least two snapshots");
  std::vector<double> series;
  for (std::size_t s = 1; s < snapshots.size(); ++s) {
    const Snapshot& prev = snapshots[s - 1];
    const Snapshot& next = snapshots[s];
    if (weight == DifferenceWeight::volume && next.weights.size() != next.ids.size())
      throw InputError("volume-weighted drift needs per-vertex weights");
    std::unordered_map<std::string, int> prev_label;
    for (std::size_t i = 0; i < prev.ids.size(); ++i)
      if (prev.labels[i] != kIsolatedLabel) prev_label.emplace(prev.ids[i], prev.labels[i]);
    std::vector<int> a;
    std::vector<int> b;
    std::vector<double> w;
    for (std::size_t i = 0; i < next.ids.size(); ++i) {
      if (next.labels[i] == kIsolatedLabel) continue;
      const auto it = prev_label.find(next.ids[i]);
      if (it == prev_label.end()) continue;
      a.push_back(it->second);
      b.push_back(next.labels[i]);
      if (weight == DifferenceWeight::volume) w.push_back(next.weights[i]);
    }
    series.push_back(match_labels(a, prev.k, b, next.k, w).total_symmetric_difference);
  }
  return series;
}

}  // namespace hermclust
