#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "hermclust/common.hpp"
#include "hermclust/random.hpp"

namespace hermclust {

struct KMeansConfig {
  int restarts = 16;
  int max_iters = 100;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;  ///< on the largest center movement
};

template <typename Scalar>
struct KMeansResult {
  std::vector<int> labels;
  Matrix<Scalar> centers;            ///< k x dim
  Scalar cost = 0;                   ///< sum_u w_u ||x_u - c_{label(u)}||^2
  std::vector<Scalar> initial_costs; ///< cost of each restart's seeding, before Lloyd
  std::vector<Scalar> final_costs;   ///< cost each restart converged to
  int best_restart = 0;
};

namespace detail {

template <typename Scalar>
Index count_distinct_rows(const Matrix<Scalar>& points) {
  std::vector<Index> order(static_cast<std::size_t>(points.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  auto row_less = [&](Index a, Index b) {
    for (Index d = 0; d < points.cols(); ++d) {
      if (points(a, d) < points(b, d)) return true;
      if (points(b, d) < points(a, d)) return false;
    }
    return false;
  };
  std::sort(order.begin(), order.end(), row_less);
  Index distinct = order.empty() ? 0 : 1;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (row_less(order[i - 1], order[i])) ++distinct;
  return distinct;
}

template <typename Scalar>
struct LloydState {
  const Matrix<Scalar>& points;
  const Vector<Scalar>& weights;
  Matrix<Scalar> centers;
  std::vector<int> labels;
  Vector<Scalar> dist2;  // weighted squared distance of each point to its center

  Scalar assign() {
    const Index n = points.rows();
    Scalar cost = 0;
    for (Index i = 0; i < n; ++i) {
      int best = 0;
      Scalar best_d = std::numeric_limits<Scalar>::infinity();
      for (Index c = 0; c < centers.rows(); ++c) {
        const Scalar d = (points.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(c);
        }
      }
      labels[static_cast<std::size_t>(i)] = best;
      dist2[i] = weights[i] * best_d;
      cost += dist2[i];
    }
    return cost;
  }

  // Indices of clusters with no points.
  std::vector<int> empty_clusters() const {
    std::vector<Index> size(static_cast<std::size_t>(centers.rows()), 0);
    for (int l : labels) ++size[static_cast<std::size_t>(l)];
    std::vector<int> empty;
    for (std::size_t c = 0; c < size.size(); ++c)
      if (size[c] == 0) empty.push_back(static_cast<int>(c));
    return empty;
  }

  // Weighted means; returns the largest center movement.
  Scalar update_centers() {
    Matrix<Scalar> sums = Matrix<Scalar>::Zero(centers.rows(), centers.cols());
    Vector<Scalar> mass = Vector<Scalar>::Zero(centers.rows());
    for (Index i = 0; i < points.rows(); ++i) {
      const int l = labels[static_cast<std::size_t>(i)];
      sums.row(l) += weights[i] * points.row(i);
      mass[l] += weights[i];
    }
    Scalar moved = 0;
    for (Index c = 0; c < centers.rows(); ++c) {
      if (!(mass[c] > 0)) continue;
      const auto updated = (sums.row(c) / mass[c]).eval();
      moved = std::max(moved, (updated - centers.row(c)).norm());
      centers.row(c) = updated;
    }
    return moved;
  }
};

// Weighted k-means++ seeding: first center with probability proportional to
// weight, later ones proportional to weight times squared distance.
template <typename Scalar>
Matrix<Scalar> seed_kmeanspp(const Matrix<Scalar>& points, const Vector<Scalar>& weights, int k,
                             SplitMix64& rng) {
  const Index n = points.rows();
  Matrix<Scalar> centers(k, points.cols());
  Vector<Scalar> score = weights;
  Vector<Scalar> nearest = Vector<Scalar>::Constant(n, std::numeric_limits<Scalar>::infinity());
  for (int c = 0; c < k; ++c) {
    const Scalar total = score.sum();
    Index pick = n - 1;
    if (total > 0) {
      const Scalar target = static_cast<Scalar>(rng.uniform()) * total;
      Scalar running = 0;
      for (Index i = 0; i < n; ++i) {
        running += score[i];
        if (running > target && score[i] > 0) {
          pick = i;
          break;
        }
      }
      while (!(score[pick] > 0)) --pick;  // rounding at the tail
    }
    centers.row(c) = points.row(pick);
    for (Index i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], (points.row(i) - centers.row(c)).squaredNorm());
      score[i] = weights[i] * nearest[i];
    }
  }
  return centers;
}

}  // namespace detail

/// Degree-weighted Lloyd k-means on the rows of `points`, best of
/// cfg.restarts k-means++ seedings by final cost (ties to the lower restart).
///
/// Empty clusters are repaired by moving the empty center onto the point with
/// the largest weighted distance to its own center; after three failed
/// repairs the restart is re-seeded. Deterministic in cfg.seed.
template <typename Scalar>
KMeansResult<Scalar> weighted_kmeans(const Matrix<Scalar>& points, const Vector<Scalar>& weights,
                                     int k, const KMeansConfig& cfg = {}) {
  const Index n = points.rows();
  if (k < 1) throw InputError("k-means needs k >= 1");
  if (cfg.restarts < 1) throw InputError("k-means needs at least one restart");
  if (weights.size() != n) throw InputError("k-means: one weight per point required");
  if ((weights.array() <= 0).any()) throw InputError("k-means weights must be positive");
  if (detail::count_distinct_rows(points) < k)
    throw InputError("k-means: fewer than " + std::to_string(k) + " distinct points");

  constexpr int kRepairAttempts = 3;
  constexpr int kReseeds = 3;

  KMeansResult<Scalar> best;
  best.cost = std::numeric_limits<Scalar>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    SplitMix64 rng(mix64(cfg.seed) + static_cast<std::uint64_t>(r));
    detail::LloydState<Scalar> state{points, weights, {}, std::vector<int>(static_cast<std::size_t>(n)),
                                     Vector<Scalar>(n)};
    Scalar cost = 0;
    Scalar initial = 0;
    bool ok = false;
    for (int attempt = 0; attempt <= kReseeds && !ok; ++attempt) {
      state.centers = detail::seed_kmeanspp(points, weights, k, rng);
      initial = state.assign();
      cost = initial;
      int failures = 0;
      ok = true;
      for (int it = 0; it < cfg.max_iters; ++it) {
        auto empty = state.empty_clusters();
        while (!empty.empty()) {
          if (++failures > kRepairAttempts) break;
          for (int c : empty) {
            Index far = 0;
            for (Index i = 1; i < n; ++i)
              if (state.dist2[i] > state.dist2[far]) far = i;
            state.centers.row(c) = points.row(far);
            state.dist2[far] = 0;
          }
          cost = state.assign();
          empty = state.empty_clusters();
        }
        if (!empty.empty()) {
          ok = false;
          break;
        }
        const Scalar moved = state.update_centers();
        cost = state.assign();
        if (moved <= cfg.tolerance) break;
      }
      if (ok && !state.empty_clusters().empty()) ok = false;
    }
    if (!ok) throw Error("k-means: empty cluster persisted after all re-seed attempts");
    // Leave centers at the weighted means of the final assignment.
    state.update_centers();
    cost = 0;
    for (Index i = 0; i < n; ++i)
      cost += weights[i] * (points.row(i) - state.centers.row(state.labels[static_cast<std::size_t>(i)])).squaredNorm();

    best.initial_costs.push_back(initial);
    best.final_costs.push_back(cost);
    if (cost < best.cost) {
      best.cost = cost;
      best.labels = state.labels;
      best.centers = state.centers;
      best.best_restart = r;
    }
  }
  return best;
}

}  // namespace hermclust
