#include "hermclust/edge_list_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace hermclust {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(trim(line.substr(start, tab == std::string_view::npos ? tab : tab - start)));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

bool parse_index(std::string_view tok, Index& out) {
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

double parse_weight(std::string_view tok, std::size_t line_no) {
  double w = 0.0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, w);
  if (ec != std::errc() || ptr != end)
    throw InputError("line " + std::to_string(line_no) + ": bad weight '" + std::string(tok) + "'");
  return w;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

WeightedDigraph read_edge_list(std::istream& in, MergePolicy policy, const VertexLabels* labels,
                               Index n) {
  std::unordered_map<std::string, Index> by_label;
  if (labels) {
    for (std::size_t i = 0; i < labels->size(); ++i) by_label.emplace((*labels)[i], static_cast<Index>(i));
    n = static_cast<Index>(labels->size());
  }
  auto resolve = [&](std::string_view tok, std::size_t line_no) {
    if (labels) {
      if (auto it = by_label.find(std::string(tok)); it != by_label.end()) return it->second;
    }
    Index id = 0;
    if (!parse_index(tok, id) || id < 0)
      throw InputError("line " + std::to_string(line_no) + ": unknown vertex '" + std::string(tok) + "'");
    return id;
  };

  std::vector<Edge> triples;
  Index declared = -1;
  Index max_id = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.starts_with('#')) {
      std::istringstream header{std::string(view.substr(1))};
      std::string key;
      Index count = 0;
      if (header >> key >> count && key == "vertices") declared = count;
      continue;
    }
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = trim(view.substr(0, hash));
    if (view.empty()) continue;
    const auto fields = split_tabs(view);
    if (fields.size() != 3)
      throw InputError("line " + std::to_string(line_no) + ": expected src<TAB>dst<TAB>weight");
    Edge e{resolve(fields[0], line_no), resolve(fields[1], line_no), parse_weight(fields[2], line_no)};
    max_id = std::max({max_id, e.src, e.dst});
    triples.push_back(e);
  }
  if (n < 0) n = std::max(declared, max_id + 1);
  return from_edge_list(triples, n, policy);
}

WeightedDigraph read_edge_list(const std::filesystem::path& path, MergePolicy policy,
                               const VertexLabels* labels, Index n) {
  auto in = open_in(path);
  return read_edge_list(in, policy, labels, n);
}

void write_edge_list(std::ostream& out, const WeightedDigraph& g) {
  out << "# vertices " << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) out << e.src << '\t' << e.dst << '\t' << format_double(e.weight) << '\n';
}

void write_edge_list(const std::filesystem::path& path, const WeightedDigraph& g) {
  auto out = open_out(path);
  write_edge_list(out, g);
}

VertexLabels read_sidecar(std::istream& in) {
  std::vector<std::pair<Index, std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = trim(line);
    if (view.empty() || view.starts_with('#')) continue;
    const auto fields = split_tabs(view);
    Index id = 0;
    if (fields.size() != 2 || !parse_index(fields[0], id) || id < 0)
      throw InputError("sidecar line " + std::to_string(line_no) + ": expected id<TAB>label");
    rows.emplace_back(id, std::string(fields[1]));
  }
  VertexLabels labels(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (auto& [id, label] : rows) {
    if (id >= static_cast<Index>(rows.size()) || seen[static_cast<std::size_t>(id)])
      throw InputError("sidecar ids must be exactly 0..N-1");
    seen[static_cast<std::size_t>(id)] = true;
    labels[static_cast<std::size_t>(id)] = std::move(label);
  }
  return labels;
}

VertexLabels read_sidecar(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_sidecar(in);
}

void write_sidecar(std::ostream& out, const VertexLabels& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << '\t' << labels[i] << '\n';
}

void write_sidecar(const std::filesystem::path& path, const VertexLabels& labels) {
  auto out = open_out(path);
  write_sidecar(out, labels);
}

}  // namespace hermclust
