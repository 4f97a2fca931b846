#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hermclust/digraph.hpp"

namespace hermclust {

/// Optional id -> label table (for example ISO country codes). Entry i names vertex i.
using VertexLabels = std::vector<std::string>;

/// Parses `src<TAB>dst<TAB>weight` lines; `#` starts a comment, blank lines are
/// skipped. With `labels`, endpoint tokens are looked up as labels first and
/// fall back to integer ids; the vertex count is labels.size(). Without labels
/// the vertex count is `n` when nonnegative, else one past the largest id.
WeightedDigraph read_edge_list(std::istream& in, MergePolicy policy = MergePolicy::net,
                               const VertexLabels* labels = nullptr, Index n = -1);
WeightedDigraph read_edge_list(const std::filesystem::path& path,
                               MergePolicy policy = MergePolicy::net,
                               const VertexLabels* labels = nullptr, Index n = -1);

/// Writes one line per edge with shortest round-trip weights. A leading
/// `# vertices N` comment keeps trailing isolated vertices on re-read.
void write_edge_list(std::ostream& out, const WeightedDigraph& g);
void write_edge_list(const std::filesystem::path& path, const WeightedDigraph& g);

/// Sidecar mapping file, one `id<TAB>label` line per vertex, ids 0..N-1.
VertexLabels read_sidecar(std::istream& in);
VertexLabels read_sidecar(const std::filesystem::path& path);
void write_sidecar(std::ostream& out, const VertexLabels& labels);
void write_sidecar(const std::filesystem::path& path, const VertexLabels& labels);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

}  // namespace hermclust
