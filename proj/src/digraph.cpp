#include "hermclust/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace hermclust {

WeightedDigraph::WeightedDigraph(Index n, std::vector<Edge> edges, BuildDiagnostics diagnostics)
    : n_(n), edges_(std::move(edges)), diagnostics_(diagnostics) {
  if (n < 0) throw InputError("vertex count must be nonnegative");
  const auto nn = static_cast<std::size_t>(n);
  d_out_ = VectorXd::Zero(n);
  d_in_ = VectorXd::Zero(n);
  out_offsets_.assign(nn + 1, 0);
  in_offsets_.assign(nn + 1, 0);

  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.src < 0 || ed.src >= n || ed.dst < 0 || ed.dst >= n)
      throw InputError("edge endpoint out of range");
    if (ed.src == ed.dst) throw InputError("self-loop in prepared edge list");
    if (!(ed.weight > 0.0) || !std::isfinite(ed.weight))
      throw InputError("prepared edge weights must be finite and positive");
    if (e > 0) {
      const Edge& prev = edges_[e - 1];
      if (std::pair(prev.src, prev.dst) >= std::pair(ed.src, ed.dst))
        throw InputError("prepared edge list must be sorted and unique");
    }
    d_out_[ed.src] += ed.weight;
    d_in_[ed.dst] += ed.weight;
    total_weight_ += ed.weight;
    ++out_offsets_[static_cast<std::size_t>(ed.src) + 1];
    ++in_offsets_[static_cast<std::size_t>(ed.dst) + 1];
  }
  for (std::size_t u = 0; u < nn; ++u) {
    out_offsets_[u + 1] += out_offsets_[u];
    in_offsets_[u + 1] += in_offsets_[u];
  }
  // Sorted by src, so out-adjacency of u is the contiguous run [out_offsets_[u], out_offsets_[u+1]).
  out_index_.resize(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) out_index_[e] = static_cast<Index>(e);
  in_index_.resize(edges_.size());
  std::vector<Index> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto v = static_cast<std::size_t>(edges_[e].dst);
    in_index_[static_cast<std::size_t>(cursor[v]++)] = static_cast<Index>(e);
  }
  d_total_ = d_in_ + d_out_;
  num_isolated_ = (d_total_.array() == 0.0).count();
}

std::span<const Index> WeightedDigraph::out_edges(Index u) const {
  const auto first = static_cast<std::size_t>(out_offsets_[static_cast<std::size_t>(u)]);
  const auto last = static_cast<std::size_t>(out_offsets_[static_cast<std::size_t>(u) + 1]);
  return std::span<const Index>(out_index_).subspan(first, last - first);
}

std::span<const Index> WeightedDigraph::in_edges(Index u) const {
  const auto first = static_cast<std::size_t>(in_offsets_[static_cast<std::size_t>(u)]);
  const auto last = static_cast<std::size_t>(in_offsets_[static_cast<std::size_t>(u) + 1]);
  return std::span<const Index>(in_index_).subspan(first, last - first);
}

double WeightedDigraph::weight(Index u, Index v) const {
  const auto first = edges_.begin() + out_offsets_[static_cast<std::size_t>(u)];
  const auto last = edges_.begin() + out_offsets_[static_cast<std::size_t>(u) + 1];
  const auto it = std::lower_bound(first, last, v,
                                   [](const Edge& e, Index dst) { return e.dst < dst; });
  return (it != last && it->dst == v) ? it->weight : 0.0;
}

WeightedDigraph from_edge_list(std::span<const Edge> triples, Index n, MergePolicy policy) {
  if (n < 0) throw InputError("vertex count must be nonnegative");
  BuildDiagnostics diag;
  std::map<std::pair<Index, Index>, double> merged;
  for (const Edge& e : triples) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      throw InputError("edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                       ") has an endpoint outside 0.." + std::to_string(n - 1));
    if (std::isnan(e.weight) || !std::isfinite(e.weight) || e.weight < 0.0)
      throw InputError("edge weights must be finite and nonnegative");
    if (e.src == e.dst) {
      ++diag.self_loops_dropped;
      continue;
    }
    if (e.weight == 0.0) {
      ++diag.zero_weight_dropped;
      continue;
    }
    auto [it, inserted] = merged.try_emplace({e.src, e.dst}, 0.0);
    if (!inserted) ++diag.duplicates_merged;
    it->second += e.weight;
  }

  std::vector<Edge> edges;
  edges.reserve(merged.size());
  for (const auto& [key, w] : merged) {
    const auto [u, v] = key;
    const auto rev = merged.find({v, u});
    if (rev == merged.end() || policy == MergePolicy::sum) {
      edges.push_back({u, v, w});
      continue;
    }
    if (policy == MergePolicy::reject)
      throw InputError("reciprocal edges between " + std::to_string(u) + " and " +
                       std::to_string(v) + " under the reject policy");
    // net: handle each unordered pair once, from its smaller endpoint.
    if (u > v) continue;
    ++diag.reciprocal_pairs_netted;
    const double d = w - rev->second;
    if (d > 0.0) {
      edges.push_back({u, v, d});
    } else if (d < 0.0) {
      edges.push_back({v, u, -d});
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.src, a.dst) < std::pair(b.src, b.dst); });
  return WeightedDigraph(n, std::move(edges), diag);
}

VertexSet::VertexSet(Index n, std::vector<Index> ids) : n_(n), ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
    throw InputError("vertex set contains duplicates");
  if (!ids_.empty() && (ids_.front() < 0 || ids_.back() >= n))
    throw InputError("vertex set id out of range");
}

VertexSet VertexSet::all(Index n) {
  std::vector<Index> ids(static_cast<std::size_t>(n));
  for (Index u = 0; u < n; ++u) ids[static_cast<std::size_t>(u)] = u;
  return VertexSet(n, std::move(ids));
}

bool VertexSet::contains(Index u) const {
  return std::binary_search(ids_.begin(), ids_.end(), u);
}

std::vector<bool> VertexSet::mask() const {
  std::vector<bool> m(static_cast<std::size_t>(n_), false);
  for (Index u : ids_) m[static_cast<std::size_t>(u)] = true;
  return m;
}

namespace {

void check_universe(const WeightedDigraph& g, const VertexSet& s) {
  if (s.universe() != g.num_vertices())
    throw InputError("vertex set universe does not match the graph");
}

}  // namespace

double volume(const WeightedDigraph& g, const VertexSet& s) {
  check_universe(g, s);
  double vol = 0.0;
  for (Index u : s.ids()) vol += g.degree()[u];
  return vol;
}

double cut_weight(const WeightedDigraph& g, const VertexSet& s, const VertexSet& t) {
  check_universe(g, s);
  check_universe(g, t);
  const auto in_t = t.mask();
  for (Index u : s.ids())
    if (in_t[static_cast<std::size_t>(u)]) throw InputError("cut_weight requires disjoint sets");
  const auto in_s = s.mask();
  double w = 0.0;
  for (const Edge& e : g.edges())
    if (in_s[static_cast<std::size_t>(e.src)] && in_t[static_cast<std::size_t>(e.dst)]) w += e.weight;
  return w;
}

MatrixXd dense_adjacency(const WeightedDigraph& g, Index guard) {
  if (g.num_vertices() > guard)
    throw SizeGuardError("dense adjacency of " + std::to_string(g.num_vertices()) +
                         " vertices exceeds the guard of " + std::to_string(guard));
  MatrixXd m = MatrixXd::Zero(g.num_vertices(), g.num_vertices());
  for (const Edge& e : g.edges()) m(e.src, e.dst) = e.weight;
  return m;
}

}  // namespace hermclust
