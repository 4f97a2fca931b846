#include "doctest.h"
#include "hermclust/dsbm.hpp"
#include "support.hpp"

using namespace hermclust;

namespace {

DsbmParams params(Index n, int k, double p, double q, double eta, DsbmVariant v, std::uint64_t seed = 1) {
  return DsbmParams{n, k, p, q, eta, v, seed};
}

// Planted block of vertex u: the truth labels run backwards along the chain.
int block(const DsbmInstance& inst, Index u) { return inst.truth.k() - 1 - inst.truth[u]; }

}  // namespace

TEST_CASE("blocks have n/k vertices and the truth is reported in reverse chain order") {
  const auto inst = generate(params(120, 4, 0.2, 0.1, 0.8, DsbmVariant::all_pairs));
  CHECK(inst.graph.num_vertices() == 120);
  CHECK(inst.truth.k() == 4);
  for (int j = 0; j < 4; ++j) CHECK(inst.truth.members(j).size() == 30);
  // vertices are laid out block by block
  CHECK(inst.truth[0] == 3);
  CHECK(inst.truth[119] == 0);
  for (const Edge& e : inst.graph.edges()) CHECK(e.weight == 1.0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(generate(params(10, 3, 0.5, 0.5, 0.7, DsbmVariant::all_pairs)), InputError);
  CHECK_THROWS_AS(generate(params(12, 3, 1.5, 0.5, 0.7, DsbmVariant::all_pairs)), InputError);
  CHECK_THROWS_AS(generate(params(12, 3, 0.5, -0.1, 0.7, DsbmVariant::all_pairs)), InputError);
  CHECK_THROWS_AS(generate(params(12, 3, 0.5, 0.5, 0.4, DsbmVariant::all_pairs)), InputError);
  CHECK_THROWS_AS(generate(params(12, 3, 0.5, 0.5, 1.1, DsbmVariant::all_pairs)), InputError);
  CHECK_THROWS_AS(generate(params(12, 0, 0.5, 0.5, 0.7, DsbmVariant::all_pairs)), InputError);
  CHECK_NOTHROW(generate(params(12, 3, 0.0, 1.0, 1.0, DsbmVariant::path_only)));
}

TEST_CASE("same parameters, same graph") {
  const auto p = params(90, 3, 0.3, 0.2, 0.75, DsbmVariant::all_pairs, 42);
  CHECK(generate(p).graph == generate(p).graph);
  auto other = p;
  other.seed = 43;
  CHECK_FALSE(generate(other).graph == generate(p).graph);
}

TEST_CASE("path-only graphs have no edges between distant blocks") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = generate(params(100, 5, 0.3, 0.6, 0.8, DsbmVariant::path_only, seed));
    for (const Edge& e : inst.graph.edges()) CHECK(std::abs(block(inst, e.src) - block(inst, e.dst)) <= 1);
    for (int j = 0; j < 5; ++j)
      for (int l = 0; l < 5; ++l)
        if (std::abs(j - l) >= 2)
          CHECK(cut_weight(inst.graph, VertexSet(100, inst.truth.members(j)), VertexSet(100, inst.truth.members(l))) == 0.0);
  }
}

TEST_CASE("eta = 1, q = 1, p = 0 on the path is a complete layered DAG") {
  const auto inst = generate(params(12, 3, 0.0, 1.0, 1.0, DsbmVariant::path_only));
  CHECK(inst.graph.num_edges() == 2 * 4 * 4);
  for (const Edge& e : inst.graph.edges()) CHECK(block(inst, e.dst) == block(inst, e.src) + 1);
  // the planted chain is the best ordering: every edge goes S_j -> S_{j-1}
  CHECK(flow_ratio(inst.graph, inst.truth).phi == doctest::Approx(2.0 * 16.0 / 48.0));
}

TEST_CASE("q = 0 leaves the blocks disconnected") {
  const auto inst = generate(params(60, 3, 0.5, 0.0, 0.9, DsbmVariant::all_pairs));
  for (const Edge& e : inst.graph.edges()) CHECK(inst.truth[e.src] == inst.truth[e.dst]);
  CHECK(inst.graph.num_edges() > 0);
}

TEST_CASE("empirical frequencies fall within three standard deviations") {
  const DsbmStatistics all = empirical_check(params(80, 4, 0.5, 0.3, 0.7, DsbmVariant::all_pairs, 5), 20);
  CHECK(all.intra_edges.trials >= 10000);
  CHECK(all.intra_edges.expected == 0.5);
  CHECK(all.intra_edges.within_three_sigma());
  CHECK(all.intra_forward.within_three_sigma());
  CHECK(all.consecutive_edges.expected == 0.3);
  CHECK(all.consecutive_edges.within_three_sigma());
  CHECK(all.consecutive_forward.expected == 0.7);
  CHECK(all.consecutive_forward.within_three_sigma());
  CHECK(all.distant_edges.within_three_sigma());
  CHECK(all.distant_forward.within_three_sigma());
  CHECK(all.intra_edges.ci_low <= 0.5);
  CHECK(all.intra_edges.ci_high >= 0.5);

  const DsbmStatistics path = empirical_check(params(80, 4, 0.2, 0.4, 0.9, DsbmVariant::path_only, 9), 20);
  CHECK(path.distant_edges.successes == 0);
  CHECK(path.distant_edges.expected == 0.0);
  CHECK(path.consecutive_forward.within_three_sigma());

  const DsbmStatistics none = empirical_check(params(40, 4, 0.5, 0.0, 0.7, DsbmVariant::all_pairs, 1), 5);
  CHECK(none.consecutive_edges.successes == 0);
  CHECK(none.distant_edges.successes == 0);
}

TEST_CASE("Clopper-Pearson interval") {
  // closed forms at the boundary: (alpha/2)^(1/n) and 1 - (alpha/2)^(1/n)
  const auto [lo0, hi0] = clopper_pearson(0, 10, 0.95);
  CHECK(lo0 == 0.0);
  CHECK(hi0 == doctest::Approx(1.0 - std::pow(0.025, 0.1)).epsilon(1e-9));
  const auto [lo1, hi1] = clopper_pearson(10, 10, 0.95);
  CHECK(lo1 == doctest::Approx(std::pow(0.025, 0.1)).epsilon(1e-9));
  CHECK(hi1 == 1.0);
  // symmetric in successes and failures
  const auto [a, b] = clopper_pearson(3, 20, 0.99);
  const auto [c, d] = clopper_pearson(17, 20, 0.99);
  CHECK(a == doctest::Approx(1.0 - d).epsilon(1e-9));
  CHECK(b == doctest::Approx(1.0 - c).epsilon(1e-9));
  // 5/10 at 95%: the beta quantiles give [0.187086, 0.812914]
  const auto [lo, hi] = clopper_pearson(5, 10, 0.95);
  CHECK(lo == doctest::Approx(0.187086).epsilon(1e-5));
  CHECK(hi == doctest::Approx(0.812914).epsilon(1e-5));
}
