#include "doctest.h"
#include "support.hpp"

using namespace hermclust;
using hermclust::testing::Rng;

TEST_CASE("net merge keeps the heavier direction with the difference") {
  const std::vector<Edge> t{{0, 1, 3.0}, {1, 0, 1.0}};
  const auto g = from_edge_list(t, 2, MergePolicy::net);
  REQUIRE(g.num_edges() == 1);
  CHECK(g.edge(0) == Edge{0, 1, 2.0});
  CHECK(g.diagnostics().reciprocal_pairs_netted == 1);
}

TEST_CASE("reject accepts a single edge and tracks degrees") {
  const std::vector<Edge> t{{0, 1, 1.0}};
  const auto g = from_edge_list(t, 2, MergePolicy::reject);
  CHECK(g.num_edges() == 1);
  CHECK(g.degree()[0] == 1.0);
  CHECK(g.degree()[1] == 1.0);
  CHECK(g.out_degree()[0] == 1.0);
  CHECK(g.in_degree()[1] == 1.0);
}

TEST_CASE("same-direction duplicates are summed") {
  const std::vector<Edge> t{{0, 1, 2.0}, {0, 1, 3.0}};
  for (auto policy : {MergePolicy::sum, MergePolicy::net, MergePolicy::reject}) {
    const auto g = from_edge_list(t, 2, policy);
    REQUIRE(g.num_edges() == 1);
    CHECK(g.edge(0) == Edge{0, 1, 5.0});
  }
}

TEST_CASE("sum keeps both directions of a reciprocal pair") {
  const std::vector<Edge> t{{0, 1, 3.0}, {1, 0, 1.0}};
  const auto g = from_edge_list(t, 2, MergePolicy::sum);
  CHECK(g.num_edges() == 2);
  CHECK(g.weight(0, 1) == 3.0);
  CHECK(g.weight(1, 0) == 1.0);
}

TEST_CASE("construction errors") {
  const std::vector<Edge> recip{{0, 1, 1.0}, {1, 0, 1.0}};
  CHECK_THROWS_AS(from_edge_list(recip, 2, MergePolicy::reject), InputError);
  const std::vector<Edge> range{{0, 2, 1.0}};
  CHECK_THROWS_AS(from_edge_list(range, 2), InputError);
  const std::vector<Edge> negative{{0, 1, -1.0}};
  CHECK_THROWS_AS(from_edge_list(negative, 2), InputError);
  const std::vector<Edge> nan{{0, 1, std::nan("")}};
  CHECK_THROWS_AS(from_edge_list(nan, 2), InputError);
}

TEST_CASE("self-loops and zero weights are dropped and counted") {
  const std::vector<Edge> t{{0, 0, 1.0}, {0, 1, 0.0}, {1, 2, 1.0}};
  const auto g = from_edge_list(t, 3);
  CHECK(g.num_edges() == 1);
  CHECK(g.diagnostics().self_loops_dropped == 1);
  CHECK(g.diagnostics().zero_weight_dropped == 1);
  CHECK(g.is_isolated(0));
  CHECK(g.num_isolated() == 1);
}

TEST_CASE("net rule cancels equal reciprocal weights") {
  const std::vector<Edge> t{{0, 1, 2.0}, {1, 0, 2.0}};
  const auto g = from_edge_list(t, 2, MergePolicy::net);
  CHECK(g.num_edges() == 0);
}

namespace {
WeightedDigraph path3() {
  const std::vector<Edge> t{{0, 1, 1.0}, {1, 2, 1.0}};
  return from_edge_list(t, 3);
}
}  // namespace

TEST_CASE("volume on a path a->b->c") {
  const auto g = path3();
  CHECK(volume(g, VertexSet(3, {1})) == 2.0);
  CHECK(volume(g, VertexSet(3, {})) == 0.0);
  CHECK(volume(g, VertexSet::all(3)) == 4.0);
}

TEST_CASE("cut weight is directed") {
  const std::vector<Edge> t{{0, 1, 5.0}};
  const auto g = from_edge_list(t, 2);
  CHECK(cut_weight(g, VertexSet(2, {0}), VertexSet(2, {1})) == 5.0);
  CHECK(cut_weight(g, VertexSet(2, {1}), VertexSet(2, {0})) == 0.0);
  CHECK_THROWS_AS(cut_weight(g, VertexSet(2, {0, 1}), VertexSet(2, {1})), InputError);

  std::vector<Edge> bip;
  for (Index l : {0, 1})
    for (Index r : {2, 3}) bip.push_back({l, r, 1.0});
  const auto b = from_edge_list(bip, 4);
  CHECK(cut_weight(b, VertexSet(4, {0, 1}), VertexSet(4, {2, 3})) == 4.0);
}

TEST_CASE("vertex sets validate ids") {
  CHECK_THROWS_AS(VertexSet(3, {3}), InputError);
  CHECK_THROWS_AS(VertexSet(5, {3, 1, 1}), InputError);
  const VertexSet s(5, {3, 1});
  CHECK(s.size() == 2);
  CHECK(s.contains(1));
  CHECK_FALSE(s.contains(2));
}

TEST_CASE("dense adjacency") {
  const std::vector<Edge> t{{0, 1, 2.0}};
  MatrixXd expect(2, 2);
  expect << 0, 2, 0, 0;
  CHECK(dense_adjacency(from_edge_list(t, 2)) == expect);
  CHECK(dense_adjacency(from_edge_list({}, 2)) == MatrixXd::Zero(2, 2));
  const MatrixXd m = dense_adjacency(path3());
  CHECK(m(0, 1) == 1.0);
  CHECK(m(1, 2) == 1.0);
  CHECK(m.sum() == 2.0);
  CHECK_THROWS_AS(dense_adjacency(from_edge_list({}, 10), 5), SizeGuardError);
}

TEST_CASE("degree sum equals twice the total weight") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testing::random_digraph(testing::uniform_int(rng, 2, 40), 0.3, rng);
    const double w = g.total_weight();
    CHECK(g.degree().sum() == doctest::Approx(2.0 * w).epsilon(1e-12));
    for (Index u = 0; u < g.num_vertices(); ++u) CHECK(g.degree()[u] == g.in_degree()[u] + g.out_degree()[u]);
  }
}

TEST_CASE("cuts and internal weights add up to the total") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = testing::uniform_int(rng, 2, 30);
    const auto g = testing::random_digraph(n, 0.4, rng);
    std::vector<Index> s_ids, t_ids;
    for (Index u = 0; u < n; ++u) (testing::uniform(rng) < 0.5 ? s_ids : t_ids).push_back(u);
    const VertexSet s(n, s_ids), t(n, t_ids);
    double internal = 0.0;
    for (const Edge& e : g.edges())
      if (s.contains(e.src) == s.contains(e.dst)) internal += e.weight;
    CHECK(cut_weight(g, s, t) + cut_weight(g, t, s) + internal == doctest::Approx(g.total_weight()).epsilon(1e-12));
  }
}

TEST_CASE("net rebuild is idempotent") {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Edge> raw;
    const Index n = 12;
    for (int i = 0; i < 60; ++i)
      raw.push_back({testing::uniform_int(rng, 0, n - 1), testing::uniform_int(rng, 0, n - 1), testing::uniform(rng, 0, 3)});
    const auto g = from_edge_list(raw, n, MergePolicy::net);
    const std::vector<Edge> again(g.edges().begin(), g.edges().end());
    CHECK(from_edge_list(again, n, MergePolicy::net) == g);
  }
}

TEST_CASE("adjacency views agree with the edge list") {
  Rng rng(14);
  const auto g = testing::random_digraph(25, 0.3, rng);
  Index out_total = 0, in_total = 0;
  for (Index u = 0; u < g.num_vertices(); ++u) {
    double out_w = 0.0;
    for (Index e : g.out_edges(u)) {
      CHECK(g.edge(e).src == u);
      CHECK(g.weight(u, g.edge(e).dst) == g.edge(e).weight);
      out_w += g.edge(e).weight;
    }
    for (Index e : g.in_edges(u)) CHECK(g.edge(e).dst == u);
    CHECK(out_w == doctest::Approx(g.out_degree()[u]));
    out_total += static_cast<Index>(g.out_edges(u).size());
    in_total += static_cast<Index>(g.in_edges(u).size());
  }
  CHECK(out_total == g.num_edges());
  CHECK(in_total == g.num_edges());
}
