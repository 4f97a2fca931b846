#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "hermclust/digraph.hpp"

namespace hermclust {

enum class TradeFlow { import_, export_ };

/// One reported bilateral flow.
struct TradeRecord {
  std::string reporter;
  std::string partner;
  TradeFlow flow = TradeFlow::export_;
  std::string commodity;
  int year = 0;
  double value = 0.0;
};

/// Header names of the columns to read, and the field delimiter.
struct ColumnMap {
  std::string reporter = "reporter";
  std::string partner = "partner";
  std::string flow = "flow";
  std::string commodity = "commodity";
  std::string year = "year";
  std::string value = "value";
  char delimiter = ',';
};

/// Keeps rows whose commodity code starts with `commodity_prefix` (HS
/// chapter "27" matches 2709, 271000, ...) and whose year is listed (all
/// years when `years` is empty).
struct TradeFilter {
  std::string commodity_prefix;
  std::set<int> years;
};

struct TradeParseDiagnostics {
  Index rows_read = 0;
  Index rows_skipped = 0;   ///< malformed or invariant-violating rows
  Index rows_filtered = 0;  ///< well-formed rows outside the filter
  std::map<std::string, Index> skip_reasons;
};

struct TradeParseResult {
  std::vector<TradeRecord> records;
  TradeParseDiagnostics diagnostics;
};

/// Single pass over a delimited file with a header row. Malformed rows are
/// counted and skipped; a missing mapped column is an error.
TradeParseResult parse_trade_csv(std::istream& in, const ColumnMap& columns, const TradeFilter& filter);
TradeParseResult parse_trade_csv(const std::filesystem::path& path, const ColumnMap& columns,
                                 const TradeFilter& filter);

/// Reconciled exports e[(j, l)]: the larger of j's reported export to l and
/// l's reported import from j. Sub-commodity values are summed per view first.
struct ExportMatrix {
  std::map<std::pair<std::string, std::string>, double> flows;
  Index reconciled_by_max = 0;  ///< pairs where both views were present
  Index single_view = 0;

  double at(const std::string& from, const std::string& to) const;
};

/// All records must share one year.
ExportMatrix reconcile_exports(const std::vector<TradeRecord>& records);

/// Bijection between country codes and dense vertex ids.
class CountryIndex {
 public:
  CountryIndex() = default;
  explicit CountryIndex(std::vector<std::string> codes);

  /// Sorted union of every code appearing in the matrices.
  static CountryIndex from_exports(const std::vector<const ExportMatrix*>& matrices);

  Index size() const noexcept { return static_cast<Index>(codes_.size()); }
  const std::vector<std::string>& codes() const noexcept { return codes_; }
  const std::string& code(Index id) const { return codes_[static_cast<std::size_t>(id)]; }
  std::optional<Index> id(const std::string& code) const;

 private:
  std::vector<std::string> codes_;
  std::unordered_map<std::string, Index> ids_;
};

struct NetTradeGraph {
  WeightedDigraph graph;
  std::set<std::string> unknown_codes;  ///< codes in the matrix but not in the index
};

/// For each pair, d = e[j][l] - e[l][j]: edge j -> l of weight d when d > 0,
/// l -> j of weight -d when d < 0, nothing when d = 0.
NetTradeGraph net_trade_graph(const ExportMatrix& e, const CountryIndex& index);

}  // namespace hermclust
