#include <sstream>

#include "doctest.h"
#include "hermclust/edge_list_io.hpp"
#include "hermclust/trade.hpp"
#include "support.hpp"

using namespace hermclust;
using testing::Rng;

namespace {

TradeParseResult parse(const std::string& text, const TradeFilter& filter = {}, ColumnMap cols = {}) {
  std::istringstream in(text);
  return parse_trade_csv(in, cols, filter);
}

TradeRecord rec(std::string reporter, std::string partner, TradeFlow flow, double value,
                std::string commodity = "27", int year = 2010) {
  return TradeRecord{std::move(reporter), std::move(partner), flow, std::move(commodity), year, value};
}

constexpr auto X = TradeFlow::export_;
constexpr auto M = TradeFlow::import_;

std::string random_csv(Rng& rng, int rows, const std::vector<std::string>& codes) {
  std::ostringstream out;
  out << "reporter,partner,flow,commodity,year,value\n";
  for (int r = 0; r < rows; ++r) {
    const auto a = static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<int>(codes.size()) - 1));
    auto b = static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<int>(codes.size()) - 2));
    if (b >= a) ++b;
    out << codes[a] << ',' << codes[b] << ',' << (testing::uniform(rng) < 0.5 ? "Export" : "Import") << ','
        << (testing::uniform(rng) < 0.5 ? "2701" : "2709") << ",2015," << testing::uniform_int(rng, 0, 50) << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("parsing examples") {
  SUBCASE("empty input") {
    const auto r = parse("");
    CHECK(r.records.empty());
    CHECK(r.diagnostics.rows_read == 0);
    CHECK(r.diagnostics.rows_skipped == 0);
    CHECK(r.diagnostics.rows_filtered == 0);
  }
  SUBCASE("negative value is skipped and counted") {
    const auto r = parse("reporter,partner,flow,commodity,year,value\nUSA,CAN,Export,27,2008,-5\nUSA,CAN,Export,27,2008,5\n");
    CHECK(r.records.size() == 1);
    CHECK(r.diagnostics.rows_skipped == 1);
    CHECK(r.diagnostics.skip_reasons.at("negative value") == 1);
  }
  SUBCASE("six-row fixture filtered to chapter 27 in 2008") {
    const std::string csv =
        "reporter,partner,flow,commodity,year,value\n"
        "USA,CAN,Export,2709,2008,100\n"
        "CAN,USA,Import,271000,2008,90\n"
        "USA,CAN,Export,4401,2008,7\n"
        "USA,MEX,Export,2709,2009,3\n"
        "MEX,USA,Import,0127,2008,4\n"
        "DEU,FRA,Export,4403,2007,1\n";
    TradeFilter f;
    f.commodity_prefix = "27";
    f.years = {2008};
    const auto r = parse(csv, f);
    REQUIRE(r.records.size() == 2);
    CHECK(r.records[0].reporter == "USA");
    CHECK(r.records[0].value == 100.0);
    CHECK(r.records[1].flow == TradeFlow::import_);
    CHECK(r.records[1].commodity == "271000");
    CHECK(r.diagnostics.rows_read == 6);
    CHECK(r.diagnostics.rows_filtered == 4);
    CHECK(r.diagnostics.rows_skipped == 0);
  }
  SUBCASE("malformed rows") {
    const auto r = parse(
        "reporter,partner,flow,commodity,year,value\n"
        "USA,USA,Export,27,2008,1\n"
        "USA,CAN,Shipped,27,2008,1\n"
        "USA,CAN,Export,27,later,1\n"
        "USA,CAN,Export,27,2008,lots\n"
        "USA,CAN,Export\n"
        ",CAN,Export,27,2008,1\n");
    CHECK(r.records.empty());
    CHECK(r.diagnostics.rows_skipped == 6);
    CHECK(r.diagnostics.skip_reasons.size() == 6);
  }
  SUBCASE("missing mapped column") {
    CHECK_THROWS_AS(parse("reporter,partner,flow,year,value\nUSA,CAN,Export,2008,1\n"), InputError);
    CHECK_THROWS_AS(parse_trade_csv(std::filesystem::path("/nonexistent/trade.csv"), {}, {}), InputError);
  }
  SUBCASE("quoting, custom column names and delimiter") {
    ColumnMap cols;
    cols.reporter = "Reporter ISO";
    cols.partner = "Partner ISO";
    cols.flow = "Trade Flow";
    cols.commodity = "Commodity Code";
    cols.year = "Year";
    cols.value = "Trade Value (US$)";
    cols.delimiter = ';';
    const auto r = parse(
        "Year;\"Reporter ISO\";\"Partner ISO\";Trade Flow;Commodity Code;\"Trade Value (US$)\";Note\r\n"
        "2012;\"NLD\";\"BEL\";X;2710;1250.5;\"said \"\"hi\"\"; then left\"\r\n",
        {}, cols);
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].reporter == "NLD");
    CHECK(r.records[0].partner == "BEL");
    CHECK(r.records[0].flow == TradeFlow::export_);
    CHECK(r.records[0].year == 2012);
    CHECK(r.records[0].value == 1250.5);
  }
}

TEST_CASE("reconciliation takes the larger view") {
  SUBCASE("examples") {
    const ExportMatrix e = reconcile_exports({rec("A", "B", X, 10), rec("B", "A", M, 12), rec("C", "A", M, 7)});
    CHECK(e.at("A", "B") == 12.0);
    CHECK(e.at("A", "C") == 7.0);
    CHECK(e.flows.count({"B", "A"}) == 0);
    CHECK(e.flows.size() == 2);
    CHECK(e.reconciled_by_max == 1);
    CHECK(e.single_view == 1);
  }
  SUBCASE("sub-commodities are summed per view before the max") {
    // exporter sees 4 + 5 = 9, importer sees 8: max of the totals, not of the parts
    const ExportMatrix e = reconcile_exports(
        {rec("A", "B", X, 4, "2701"), rec("A", "B", X, 5, "2709"), rec("B", "A", M, 8, "2709")});
    CHECK(e.at("A", "B") == 9.0);
  }
  SUBCASE("records from several years are rejected") {
    CHECK_THROWS_AS(reconcile_exports({rec("A", "B", X, 1, "27", 2010), rec("A", "B", X, 1, "27", 2011)}), InputError);
  }
  SUBCASE("mirrored reports on random fixtures") {
    Rng rng(5);
    const std::vector<std::string> codes{"AA", "BB", "CC", "DD", "EE"};
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<TradeRecord> records;
      std::map<std::pair<std::string, std::string>, double> by_exp, by_imp;
      for (int r = 0; r < 30; ++r) {
        const auto a = codes[static_cast<std::size_t>(testing::uniform_int(rng, 0, 4))];
        const auto b = codes[static_cast<std::size_t>(testing::uniform_int(rng, 0, 4))];
        if (a == b) continue;
        const double v = testing::uniform_int(rng, 0, 20);
        if (testing::uniform(rng) < 0.5) {
          records.push_back(rec(a, b, X, v));
          by_exp[{a, b}] += v;
        } else {
          records.push_back(rec(a, b, M, v));
          by_imp[{b, a}] += v;
        }
      }
      if (records.empty()) continue;
      const ExportMatrix e = reconcile_exports(records);
      for (const auto& a : codes)
        for (const auto& b : codes) {
          const bool has_x = by_exp.contains({a, b});
          const bool has_m = by_imp.contains({a, b});
          CHECK(e.flows.contains({a, b}) == (has_x || has_m));
          const double expected = std::max(has_x ? by_exp[{a, b}] : 0.0, has_m ? by_imp[{a, b}] : 0.0);
          CHECK(e.at(a, b) == expected);
        }
    }
  }
}

TEST_CASE("net trade graph") {
  const CountryIndex index({"A", "B", "C", "D"});
  SUBCASE("examples") {
    ExportMatrix e;
    e.flows[{"A", "B"}] = 5;
    e.flows[{"B", "A"}] = 3;
    e.flows[{"C", "D"}] = 4;
    e.flows[{"D", "C"}] = 4;
    e.flows[{"A", "C"}] = 1;
    e.flows[{"D", "B"}] = 2.5;
    const NetTradeGraph g = net_trade_graph(e, index);
    CHECK(g.graph.num_edges() == 3);
    CHECK(g.graph.weight(0, 1) == 2.0);
    CHECK(g.graph.weight(1, 0) == 0.0);
    CHECK(g.graph.weight(2, 3) == 0.0);
    CHECK(g.graph.weight(3, 2) == 0.0);
    CHECK(g.graph.weight(0, 2) == 1.0);
    CHECK(g.graph.weight(3, 1) == 2.5);
    CHECK(g.unknown_codes.empty());
  }
  SUBCASE("unknown codes are collected, not fatal") {
    ExportMatrix e;
    e.flows[{"A", "ZZ"}] = 5;
    e.flows[{"YY", "B"}] = 5;
    e.flows[{"A", "B"}] = 1;
    const NetTradeGraph g = net_trade_graph(e, index);
    CHECK(g.unknown_codes == std::set<std::string>{"YY", "ZZ"});
    CHECK(g.graph.num_edges() == 1);
  }
  SUBCASE("antisymmetric, nonnegative, and equal to d = e(j,l) - e(l,j)") {
    Rng rng(9);
    const std::vector<std::string> codes{"AA", "BB", "CC", "DD", "EE", "FF"};
    const CountryIndex idx(codes);
    for (int trial = 0; trial < 20; ++trial) {
      const auto parsed = parse(random_csv(rng, 60, codes));
      const ExportMatrix e = reconcile_exports(parsed.records);
      const WeightedDigraph g = net_trade_graph(e, idx).graph;
      CHECK_NOTHROW(from_edge_list(std::vector<Edge>(g.edges().begin(), g.edges().end()), g.num_vertices(), MergePolicy::reject));
      for (const Edge& x : g.edges()) CHECK(x.weight > 0.0);
      for (Index j = 0; j < 6; ++j)
        for (Index l = 0; l < 6; ++l) {
          if (j == l) continue;
          CHECK((g.weight(j, l) == 0.0 || g.weight(l, j) == 0.0));
          const double d = e.at(codes[static_cast<std::size_t>(j)], codes[static_cast<std::size_t>(l)]) -
                           e.at(codes[static_cast<std::size_t>(l)], codes[static_cast<std::size_t>(j)]);
          CHECK(g.weight(j, l) == std::max(d, 0.0));
        }
    }
  }
}

TEST_CASE("row order does not matter and the graph round-trips") {
  Rng rng(12);
  const std::vector<std::string> codes{"AA", "BB", "CC", "DD", "EE", "FF", "GG"};
  const CountryIndex idx(codes);
  for (int trial = 0; trial < 10; ++trial) {
    const std::string csv = random_csv(rng, 80, codes);
    std::vector<std::string> lines;
    std::istringstream in(csv);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    std::shuffle(lines.begin() + 1, lines.end(), rng);
    std::string shuffled;
    for (const auto& l : lines) shuffled += l + "\n";

    const WeightedDigraph a = net_trade_graph(reconcile_exports(parse(csv).records), idx).graph;
    const WeightedDigraph b = net_trade_graph(reconcile_exports(parse(shuffled).records), idx).graph;
    CHECK(a == b);

    std::stringstream io;
    write_edge_list(io, a);
    CHECK(read_edge_list(io, MergePolicy::reject, nullptr, a.num_vertices()) == a);
  }
}

TEST_CASE("country index") {
  const CountryIndex idx({"DEU", "FRA"});
  CHECK(idx.size() == 2);
  CHECK(idx.id("FRA") == 1);
  CHECK_FALSE(idx.id("USA").has_value());
  CHECK(idx.code(0) == "DEU");
  CHECK_THROWS_AS(CountryIndex({"DEU", "DEU"}), InputError);

  ExportMatrix a, b;
  a.flows[{"FRA", "DEU"}] = 1;
  b.flows[{"USA", "BEL"}] = 1;
  const CountryIndex u = CountryIndex::from_exports({&a, &b});
  CHECK(u.codes() == std::vector<std::string>{"BEL", "DEU", "FRA", "USA"});
}
