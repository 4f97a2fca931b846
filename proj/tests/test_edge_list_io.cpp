#include <sstream>

#include "doctest.h"
#include "hermclust/edge_list_io.hpp"
#include "support.hpp"

using namespace hermclust;

TEST_CASE("edge list round trip is exact") {
  testing::Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_digraph(30, 0.2, rng);
    std::stringstream buf;
    write_edge_list(buf, g);
    CHECK(read_edge_list(buf) == g);
  }
}

TEST_CASE("vertex header keeps trailing isolated vertices") {
  const std::vector<Edge> t{{0, 1, 1.5}};
  const auto g = from_edge_list(t, 5);
  std::stringstream buf;
  write_edge_list(buf, g);
  const auto back = read_edge_list(buf);
  CHECK(back.num_vertices() == 5);
  CHECK(back == g);
}

TEST_CASE("comments, blank lines and reciprocal netting on read") {
  std::istringstream in("# a comment\n\n0\t1\t3\n1\t0\t1  # trailing\n2\t1\t0.5\n");
  const auto g = read_edge_list(in);
  CHECK(g.num_vertices() == 3);
  CHECK(g.weight(0, 1) == 2.0);
  CHECK(g.weight(2, 1) == 0.5);
}

TEST_CASE("malformed lines are rejected") {
  std::istringstream missing("0\t1\n");
  CHECK_THROWS_AS(read_edge_list(missing), InputError);
  std::istringstream junk("0\t1\tabc\n");
  CHECK_THROWS_AS(read_edge_list(junk), InputError);
  std::istringstream negative("-1\t1\t1\n");
  CHECK_THROWS_AS(read_edge_list(negative), InputError);
  CHECK_THROWS_AS(read_edge_list(std::filesystem::path("/nonexistent/graph.tsv")), InputError);
}

TEST_CASE("labels from a sidecar resolve endpoints") {
  std::istringstream side("0\tUSA\n1\tCHN\n2\tDEU\n");
  const VertexLabels labels = read_sidecar(side);
  REQUIRE(labels.size() == 3);
  std::istringstream in("USA\tCHN\t4\nDEU\t0\t1\n");
  const auto g = read_edge_list(in, MergePolicy::net, &labels);
  CHECK(g.num_vertices() == 3);
  CHECK(g.weight(0, 1) == 4.0);
  CHECK(g.weight(2, 0) == 1.0);
  std::istringstream unknown("USA\tFRA\t1\n");
  CHECK_THROWS_AS(read_edge_list(unknown, MergePolicy::net, &labels), InputError);

  std::stringstream out;
  write_sidecar(out, labels);
  CHECK(read_sidecar(out) == labels);
  std::istringstream gap("0\tA\n2\tB\n");
  CHECK_THROWS_AS(read_sidecar(gap), InputError);
}

TEST_CASE("format_double is round-trip exact") {
  testing::Rng rng(22);
  for (int i = 0; i < 1000; ++i) {
    const double x = testing::uniform(rng, -1e6, 1e6) * std::pow(10.0, testing::uniform_int(rng, -20, 20));
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.1) == "0.1");
}
