#include "hermclust/trade.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

namespace hermclust {

namespace {

// Splits one delimited line, honoring double-quoted fields with "" escapes.
std::vector<std::string> split_row(const std::string& line, char delimiter) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  for (auto& f : fields) {
    const auto first = f.find_first_not_of(" \t");
    const auto last = f.find_last_not_of(" \t");
    f = first == std::string::npos ? std::string() : f.substr(first, last - first + 1);
  }
  return fields;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<TradeFlow> parse_flow(const std::string& raw) {
  const std::string s = lower(raw);
  if (s == "export" || s == "exports" || s == "x" || s == "2") return TradeFlow::export_;
  if (s == "import" || s == "imports" || s == "m" || s == "1") return TradeFlow::import_;
  return std::nullopt;
}

template <typename T>
bool parse_number(const std::string& s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

TradeParseResult parse_trade_csv(std::istream& in, const ColumnMap& columns, const TradeFilter& filter) {
  TradeParseResult result;
  std::string line;
  if (!std::getline(in, line)) return result;
  const auto header = split_row(line, columns.delimiter);
  auto locate = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw InputError("trade file has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_reporter = locate(columns.reporter);
  const std::size_t c_partner = locate(columns.partner);
  const std::size_t c_flow = locate(columns.flow);
  const std::size_t c_commodity = locate(columns.commodity);
  const std::size_t c_year = locate(columns.year);
  const std::size_t c_value = locate(columns.value);
  const std::size_t needed = std::max({c_reporter, c_partner, c_flow, c_commodity, c_year, c_value}) + 1;

  auto& diag = result.diagnostics;
  auto skip = [&](const char* reason) {
    ++diag.rows_skipped;
    ++diag.skip_reasons[reason];
  };
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++diag.rows_read;
    const auto f = split_row(line, columns.delimiter);
    if (f.size() < needed) {
      skip("too few fields");
      continue;
    }
    TradeRecord r;
    r.reporter = f[c_reporter];
    r.partner = f[c_partner];
    r.commodity = f[c_commodity];
    if (r.reporter.empty() || r.partner.empty()) {
      skip("missing country code");
      continue;
    }
    if (r.reporter == r.partner) {
      skip("reporter equals partner");
      continue;
    }
    const auto flow = parse_flow(f[c_flow]);
    if (!flow) {
      skip("unrecognized flow");
      continue;
    }
    r.flow = *flow;
    if (!parse_number(f[c_year], r.year)) {
      skip("bad year");
      continue;
    }
    if (!parse_number(f[c_value], r.value) || !std::isfinite(r.value)) {
      skip("bad value");
      continue;
    }
    if (r.value < 0.0) {
      skip("negative value");
      continue;
    }
    if (!r.commodity.starts_with(filter.commodity_prefix) ||
        (!filter.years.empty() && !filter.years.contains(r.year))) {
      ++diag.rows_filtered;
      continue;
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

TradeParseResult parse_trade_csv(const std::filesystem::path& path, const ColumnMap& columns,
                                 const TradeFilter& filter) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_trade_csv(in, columns, filter);
}

double ExportMatrix::at(const std::string& from, const std::string& to) const {
  const auto it = flows.find({from, to});
  return it == flows.end() ? 0.0 : it->second;
}

ExportMatrix reconcile_exports(const std::vector<TradeRecord>& records) {
  // (exporter, importer) -> value as seen by the exporter and by the importer.
  std::map<std::pair<std::string, std::string>, std::pair<std::optional<double>, std::optional<double>>> views;
  for (const auto& r : records) {
    if (r.year != records.front().year) throw InputError("reconcile_exports: records span several years");
    if (r.flow == TradeFlow::export_) {
      auto& v = views[{r.reporter, r.partner}].first;
      v = v.value_or(0.0) + r.value;
    } else {
      auto& v = views[{r.partner, r.reporter}].second;
      v = v.value_or(0.0) + r.value;
    }
  }
  ExportMatrix e;
  for (const auto& [pair, view] : views) {
    const auto& [by_exporter, by_importer] = view;
    if (by_exporter && by_importer) {
      ++e.reconciled_by_max;
      e.flows[pair] = std::max(*by_exporter, *by_importer);
    } else {
      ++e.single_view;
      e.flows[pair] = by_exporter ? *by_exporter : *by_importer;
    }
  }
  return e;
}

CountryIndex::CountryIndex(std::vector<std::string> codes) : codes_(std::move(codes)) {
  for (std::size_t i = 0; i < codes_.size(); ++i)
    if (!ids_.emplace(codes_[i], static_cast<Index>(i)).second)
      throw InputError("country index lists '" + codes_[i] + "' twice");
}

CountryIndex CountryIndex::from_exports(const std::vector<const ExportMatrix*>& matrices) {
  std::set<std::string> codes;
  for (const auto* m : matrices)
    for (const auto& [pair, value] : m->flows) {
      codes.insert(pair.first);
      codes.insert(pair.second);
    }
  return CountryIndex(std::vector<std::string>(codes.begin(), codes.end()));
}

std::optional<Index> CountryIndex::id(const std::string& code) const {
  const auto it = ids_.find(code);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

NetTradeGraph net_trade_graph(const ExportMatrix& e, const CountryIndex& index) {
  NetTradeGraph out;
  std::vector<Edge> triples;
  for (const auto& [pair, value] : e.flows) {
    const auto& [j, l] = pair;
    const auto ij = index.id(j);
    const auto il = index.id(l);
    if (!ij) out.unknown_codes.insert(j);
    if (!il) out.unknown_codes.insert(l);
    if (!ij || !il) continue;
    // Visit each unordered pair once, from its lexicographically smaller code.
    if (e.flows.contains({l, j}) && l < j) continue;
    const double d = value - e.at(l, j);
    if (d > 0.0) {
      triples.push_back({*ij, *il, d});
    } else if (d < 0.0) {
      triples.push_back({*il, *ij, -d});
    }
  }
  out.graph = from_edge_list(triples, index.size(), MergePolicy::reject);
  return out;
}

}  // namespace hermclust
