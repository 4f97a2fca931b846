#include "hermclust/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "hermclust/baselines.hpp"
#include "hermclust/cluster.hpp"
#include "hermclust/edge_list_io.hpp"
#include "hermclust/sparsify.hpp"

namespace hermclust::cli {

using nlohmann::json;

namespace {

std::string absolute_string(const fs::path& p) { return fs::absolute(p).lexically_normal().string(); }

// Creates the output directory and records it.
void open_out(RunManifest& m, const fs::path& out) {
  if (out.empty()) throw InputError("--out is required");
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw Error("cannot create output directory " + out.string());
  m.out = absolute_string(out);
}

std::ofstream open_artifact(RunManifest& m, const fs::path& out, const std::string& name) {
  std::ofstream f(out / name);
  if (!f) throw Error("cannot write " + (out / name).string());
  m.artifacts.push_back(name);
  return f;
}

void write_json(RunManifest& m, const fs::path& out, const std::string& name, const json& j) {
  open_artifact(m, out, name) << j.dump(2) << '\n';
}

void finish(RunManifest& m, const fs::path& out) {
  m.artifacts.push_back("manifest.json");
  m.write(out / "manifest.json");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

const char* variant_name(DsbmVariant v) { return v == DsbmVariant::path_only ? "path_only" : "all_pairs"; }

DsbmVariant parse_variant(const std::string& s) {
  if (s == "all_pairs") return DsbmVariant::all_pairs;
  if (s == "path_only") return DsbmVariant::path_only;
  throw InputError("unknown DSBM variant '" + s + "' (all_pairs or path_only)");
}

const char* merge_name(MergePolicy p) {
  switch (p) {
    case MergePolicy::reject: return "reject";
    case MergePolicy::sum: return "sum";
    default: return "net";
  }
}

MergePolicy parse_merge(const std::string& s) {
  if (s == "reject") return MergePolicy::reject;
  if (s == "net") return MergePolicy::net;
  if (s == "sum") return MergePolicy::sum;
  throw InputError("unknown merge policy '" + s + "' (reject, net or sum)");
}

// Raw k-means label of each vertex: ordering[new] = old.
int raw_label(const Clustering& c, int ordered) {
  return ordered == kIsolatedLabel ? kIsolatedLabel : c.ordering[static_cast<std::size_t>(ordered)];
}

void write_labels(std::ostream& out, const Clustering& c, const VertexLabels* names) {
  out << "vertex_id,label,ordered_label" << (names ? ",name" : "") << '\n';
  for (std::size_t u = 0; u < c.labels.size(); ++u) {
    out << u << ',' << raw_label(c, c.labels[u]) << ',' << c.labels[u];
    if (names) out << ',' << csv_field((*names)[u]);
    out << '\n';
  }
}

json cluster_summary(const WeightedDigraph& g, const Clustering& c) {
  const Partition p = c.partition();
  const VectorXd vol = cluster_volumes(g, p);
  std::vector<Index> sizes(static_cast<std::size_t>(c.k), 0);
  for (int l : c.labels)
    if (l != kIsolatedLabel) ++sizes[static_cast<std::size_t>(l)];
  json j;
  j["k"] = c.k;
  j["phi"] = flow_ratio(g, p).phi;
  j["cost"] = c.cost;
  j["cluster_sizes"] = sizes;
  j["cluster_volumes"] = std::vector<double>(vol.data(), vol.data() + vol.size());
  j["ordering"] = c.ordering;
  return j;
}

// Extends a clustering of the sparsified graph to every vertex that is
// non-isolated in g: vertices that lost all their edges join the cluster
// they send and receive the most G-weight to. Returns the number assigned.
Index extend_to(const WeightedDigraph& g, std::vector<int>& labels, int k) {
  Index assigned = 0;
  std::vector<int> snapshot = labels;
  for (Index u = 0; u < g.num_vertices(); ++u) {
    if (snapshot[static_cast<std::size_t>(u)] != kIsolatedLabel || g.is_isolated(u)) continue;
    std::vector<double> pull(static_cast<std::size_t>(k), 0.0);
    for (Index e : g.out_edges(u)) {
      const int l = snapshot[static_cast<std::size_t>(g.edge(e).dst)];
      if (l != kIsolatedLabel) pull[static_cast<std::size_t>(l)] += g.edge(e).weight;
    }
    for (Index e : g.in_edges(u)) {
      const int l = snapshot[static_cast<std::size_t>(g.edge(e).src)];
      if (l != kIsolatedLabel) pull[static_cast<std::size_t>(l)] += g.edge(e).weight;
    }
    labels[static_cast<std::size_t>(u)] = static_cast<int>(std::max_element(pull.begin(), pull.end()) - pull.begin());
    ++assigned;
  }
  return assigned;
}

// ---- parameter (de)serialization, used by manifests and replay ----

json to_params(const GenerateOptions& o) {
  return {{"n", o.dsbm.n},     {"k", o.dsbm.k},   {"p", o.dsbm.p},
          {"q", o.dsbm.q},     {"eta", o.dsbm.eta}, {"variant", variant_name(o.dsbm.variant)},
          {"seed", o.dsbm.seed}};
}

GenerateOptions generate_from(const json& j) {
  GenerateOptions o;
  o.dsbm.n = j.at("n").get<Index>();
  o.dsbm.k = j.at("k").get<int>();
  o.dsbm.p = j.at("p").get<double>();
  o.dsbm.q = j.at("q").get<double>();
  o.dsbm.eta = j.at("eta").get<double>();
  o.dsbm.variant = parse_variant(j.at("variant").get<std::string>());
  o.dsbm.seed = j.at("seed").get<std::uint64_t>();
  return o;
}

json to_params(const ClusterOptions& o) {
  json j{{"graph", absolute_string(o.graph)},
         {"k", o.k},
         {"sparsify", o.sparsify},
         {"alpha_s", o.alpha_s},
         {"seed", o.seed},
         {"baseline", o.baseline},
         {"merge", merge_name(o.merge)},
         {"restarts", o.restarts},
         {"tolerance", o.tolerance}};
  j["names"] = o.names ? json(absolute_string(*o.names)) : json(nullptr);
  j["lambda2"] = o.lambda2 ? json(*o.lambda2) : json(nullptr);
  return j;
}

ClusterOptions cluster_from(const json& j) {
  ClusterOptions o;
  o.graph = j.at("graph").get<std::string>();
  if (!j.at("names").is_null()) o.names = j.at("names").get<std::string>();
  o.k = j.at("k").get<int>();
  o.sparsify = j.at("sparsify").get<bool>();
  o.alpha_s = j.at("alpha_s").get<double>();
  if (!j.at("lambda2").is_null()) o.lambda2 = j.at("lambda2").get<double>();
  o.seed = j.at("seed").get<std::uint64_t>();
  o.baseline = j.at("baseline").get<std::string>();
  o.merge = parse_merge(j.at("merge").get<std::string>());
  o.restarts = j.at("restarts").get<int>();
  o.tolerance = j.at("tolerance").get<double>();
  return o;
}

json to_params(const SweepOptions& o, const SweepGrid& grid) {
  return {{"protocol", o.protocol}, {"scale", o.scale},     {"n", grid.n},
          {"k", grid.k},            {"variant", variant_name(grid.variant)},
          {"p_values", grid.p_values}, {"eta_values", grid.eta_values},
          {"seeds", o.seeds},       {"seed", o.seed},       {"methods", o.methods},
          {"threads", o.threads}};
}

SweepOptions sweep_from(const json& j) {
  SweepOptions o;
  o.protocol = j.at("protocol").get<std::string>();
  o.scale = j.at("scale").get<double>();
  o.n = j.at("n").get<Index>();
  o.p_values = j.at("p_values").get<std::vector<double>>();
  o.eta_values = j.at("eta_values").get<std::vector<double>>();
  o.seeds = j.at("seeds").get<int>();
  o.seed = j.at("seed").get<std::uint64_t>();
  o.methods = j.at("methods").get<std::vector<std::string>>();
  o.threads = j.at("threads").get<int>();
  return o;
}

json to_params(const TradeOptions& o) {
  std::vector<std::string> inputs;
  for (const auto& p : o.inputs) inputs.push_back(absolute_string(p));
  json j{{"inputs", inputs},
         {"commodity", o.commodity},
         {"years", o.years},
         {"k", o.k},
         {"seed", o.seed},
         {"columns",
          {{"reporter", o.columns.reporter},
           {"partner", o.columns.partner},
           {"flow", o.columns.flow},
           {"commodity", o.columns.commodity},
           {"year", o.columns.year},
           {"value", o.columns.value},
           {"delimiter", std::string(1, o.columns.delimiter)}}}};
  j["index"] = o.index ? json(absolute_string(*o.index)) : json(nullptr);
  return j;
}

TradeOptions trade_from(const json& j) {
  TradeOptions o;
  for (const auto& p : j.at("inputs")) o.inputs.emplace_back(p.get<std::string>());
  o.commodity = j.at("commodity").get<std::string>();
  o.years = j.at("years").get<std::vector<int>>();
  o.k = j.at("k").get<int>();
  o.seed = j.at("seed").get<std::uint64_t>();
  const auto& c = j.at("columns");
  o.columns.reporter = c.at("reporter").get<std::string>();
  o.columns.partner = c.at("partner").get<std::string>();
  o.columns.flow = c.at("flow").get<std::string>();
  o.columns.commodity = c.at("commodity").get<std::string>();
  o.columns.year = c.at("year").get<std::string>();
  o.columns.value = c.at("value").get<std::string>();
  const auto delim = c.at("delimiter").get<std::string>();
  if (delim.size() != 1) throw InputError("manifest delimiter must be one character");
  o.columns.delimiter = delim[0];
  if (!j.at("index").is_null()) o.index = j.at("index").get<std::string>();
  return o;
}

std::vector<std::string> read_code_list(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open country index " + path.string());
  std::vector<std::string> codes;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    const auto b = line.find_last_not_of(" \t\r");
    codes.push_back(line.substr(a, b - a + 1));
  }
  return codes;
}

}  // namespace

int default_threads() {
  if (const char* env = std::getenv("HERMCLUST_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunManifest cmd_generate(const GenerateOptions& opts) {
  opts.dsbm.validate();
  RunManifest m;
  m.subcommand = "generate";
  m.params = to_params(opts);
  open_out(m, opts.out);
  StageClock clock(m);

  const DsbmInstance inst = generate(opts.dsbm);
  clock.mark("generate");

  {
    auto f = open_artifact(m, opts.out, "graph.tsv");
    write_edge_list(f, inst.graph);
  }
  {
    auto f = open_artifact(m, opts.out, "ground_truth.csv");
    f << "vertex_id,label\n";
    for (Index u = 0; u < inst.truth.size(); ++u) f << u << ',' << inst.truth[u] << '\n';
  }
  clock.mark("write");
  finish(m, opts.out);
  return m;
}

RunManifest cmd_cluster(const ClusterOptions& opts) {
  if (opts.baseline != "none" && opts.baseline != "ddsym" && opts.baseline != "hermrw")
    throw InputError("unknown baseline '" + opts.baseline + "' (none, ddsym or hermrw)");
  if (opts.k < 1) throw InputError("k must be at least 1");
  if (opts.sparsify && !(opts.alpha_s > 0.0)) throw InputError("--alpha-s must be positive");
  if (opts.lambda2 && !(*opts.lambda2 > 0.0)) throw InputError("--lambda2 must be positive");

  RunManifest m;
  m.subcommand = "cluster";
  m.params = to_params(opts);
  m.inputs.push_back(absolute_string(opts.graph));
  if (opts.names) m.inputs.push_back(absolute_string(*opts.names));
  open_out(m, opts.out);
  StageClock clock(m);

  VertexLabels names;
  if (opts.names) names = read_sidecar(*opts.names);
  const WeightedDigraph g = read_edge_list(opts.graph, opts.merge, opts.names ? &names : nullptr);
  const Index active = g.num_vertices() - g.num_isolated();
  if (opts.k > active)
    throw InputError("k = " + std::to_string(opts.k) + " exceeds the " + std::to_string(active) +
                     " non-isolated vertices");
  clock.mark("load");

  SolverConfig solver;
  solver.tolerance = opts.tolerance;
  solver.seed = opts.seed;
  KMeansConfig kmeans;
  kmeans.seed = opts.seed;
  kmeans.restarts = opts.restarts;

  json diag;
  diag["n"] = g.num_vertices();
  diag["edges"] = g.num_edges();
  diag["isolated"] = g.num_isolated();
  diag["seed"] = opts.seed;

  std::optional<SparsifiedGraph> sparse;
  double lambda2_g = std::numeric_limits<double>::quiet_NaN();
  if (opts.sparsify) {
    if (opts.lambda2) {
      lambda2_g = *opts.lambda2;
    } else {
      lambda2_g = estimate_lambda2(g, opts.k, solver);
      clock.mark("lambda2_estimate");
    }
    sparse = sparsify(g, {opts.alpha_s, lambda2_g, opts.seed});
    clock.mark("sparsify");
    if (opts.k > sparse->graph.num_vertices() - sparse->graph.num_isolated())
      throw InputError("sparsified graph has fewer non-isolated vertices than k; raise --alpha-s");
  }
  const WeightedDigraph& target = sparse ? sparse->graph : g;

  SimpleHermOptions herm;
  herm.on_stage_done = [&](std::string_view stage) { clock.mark(std::string(stage)); };
  const Clustering c = simple_herm(target, opts.k, solver, kmeans, herm);

  {
    auto f = open_artifact(m, opts.out, "labels.csv");
    write_labels(f, c, opts.names ? &names : nullptr);
  }
  const auto& d = c.diagnostics;
  diag["clustered_graph"] = sparse ? "sparsified" : "input";
  diag["lambda1"] = d.lambda1;
  diag["residual1"] = d.residual1;
  diag["iterations1"] = d.iterations1;
  diag["lambda2"] = d.lambda2;
  diag["residual2"] = d.residual2;
  diag["iterations2"] = d.iterations2;
  diag["lambda2_converged"] = d.lambda2_converged;
  diag["degenerate_gap"] = d.degenerate_gap;
  diag.update(cluster_summary(target, c));
  diag["initial_costs"] = c.initial_costs;

  if (opts.baseline != "none") {
    BaselineConfig bcfg;
    bcfg.kmeans = kmeans;
    const Clustering b = opts.baseline == "ddsym" ? dd_sym_baseline(target, opts.k, bcfg)
                                                  : herm_rw_baseline(target, opts.k, bcfg);
    clock.mark("baseline");
    auto f = open_artifact(m, opts.out, "labels_" + opts.baseline + ".csv");
    write_labels(f, b, opts.names ? &names : nullptr);
    diag["baseline"] = cluster_summary(target, b);
    diag["baseline"]["method"] = opts.baseline;
  }

  if (sparse) {
    std::vector<int> labels = c.labels;
    const Index assigned = extend_to(g, labels, opts.k);
    const PreservationReport r =
        preservation_report(g, *sparse, Partition(labels, opts.k), opts.k, solver, lambda2_g);
    clock.mark("preservation");
    json pj{{"edges_g", r.edges_g},
            {"edges_h", r.edges_h},
            {"expected_edges_h", sparse->expected_retained},
            {"alpha_s", opts.alpha_s},
            {"lambda2_used", lambda2_g},
            {"lambda2_source", opts.lambda2 ? "flag" : "estimated from the full graph (not sublinear)"},
            {"edge_bound", opts.alpha_s / lambda2_g * static_cast<double>(g.num_vertices()) *
                               std::log(static_cast<double>(g.num_vertices()))},
            {"phi_g", r.phi_g},
            {"phi_h", r.phi_h},
            {"cut_ratios", r.cut_ratios},
            {"volume_ratios", r.volume_ratios},
            {"lambda2_g", r.lambda2_g},
            {"lambda2_h", r.lambda2_h},
            {"vertices_isolated_by_sampling", assigned}};
    write_json(m, opts.out, "preservation.json", pj);
  }

  write_json(m, opts.out, "diagnostics.json", diag);
  clock.mark("write");
  finish(m, opts.out);
  return m;
}

SweepGrid resolve_grid(const SweepOptions& opts) {
  SweepGrid grid;
  Index base_n = 0;
  if (opts.protocol == "fig1") {
    base_n = 1000;
    grid.k = 4;
    grid.variant = DsbmVariant::all_pairs;
    grid.p_values = {0.5, 0.6, 0.7, 0.8};
    grid.eta_values = {0.5, 0.55, 0.6, 0.65, 0.7};
  } else if (opts.protocol == "fig2") {
    base_n = 2000;
    grid.k = 8;
    grid.variant = DsbmVariant::path_only;
    grid.p_values = {0.06, 0.075, 0.09};
    grid.eta_values = {0.7, 0.8, 0.9, 1.0};
  } else {
    throw InputError("unknown protocol '" + opts.protocol + "' (fig1 or fig2)");
  }
  if (!opts.p_values.empty()) grid.p_values = opts.p_values;
  if (!opts.eta_values.empty()) grid.eta_values = opts.eta_values;
  if (opts.n > 0) {
    grid.n = opts.n;
  } else {
    if (!(opts.scale > 0.0)) throw InputError("--scale must be positive");
    const auto blocks = std::llround(opts.scale * static_cast<double>(base_n) / grid.k);
    grid.n = std::max<Index>(1, blocks) * grid.k;
  }
  if (opts.seeds < 1) throw InputError("--seeds must be at least 1");
  for (const auto& method : opts.methods)
    if (method != "simpleherm" && method != "ddsym" && method != "hermrw")
      throw InputError("unknown method '" + method + "' (simpleherm, ddsym, hermrw)");
  // Validates every cell up front so workers never see bad parameters.
  for (double p : grid.p_values)
    for (double eta : grid.eta_values) DsbmParams{grid.n, grid.k, p, p, eta, grid.variant, 0}.validate();
  return grid;
}

RunManifest cmd_sweep(const SweepOptions& opts) {
  const SweepGrid grid = resolve_grid(opts);
  RunManifest m;
  m.subcommand = "sweep";
  m.params = to_params(opts, grid);
  open_out(m, opts.out);
  StageClock clock(m);

  const std::size_t np = grid.p_values.size();
  const std::size_t ne = grid.eta_values.size();
  const std::size_t ns = static_cast<std::size_t>(opts.seeds);
  const std::size_t nm = opts.methods.size();
  const std::size_t cells = np * ne * ns;
  // ari[cell * nm + method]; cell = (pi * ne + ei) * ns + s
  std::vector<double> ari(cells * nm, 0.0);
  std::vector<char> unconverged(cells * nm, 0);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      try {
        const std::size_t s = cell % ns;
        const std::size_t ei = (cell / ns) % ne;
        const std::size_t pi = cell / (ns * ne);
        const std::uint64_t seed = opts.seed + s;
        const double p = grid.p_values[pi];
        const DsbmInstance inst =
            generate({grid.n, grid.k, p, p, grid.eta_values[ei], grid.variant, seed});
        SolverConfig solver;
        solver.seed = seed;
        solver.require_convergence = false;
        KMeansConfig kmeans;
        kmeans.seed = seed;
        for (std::size_t mi = 0; mi < nm; ++mi) {
          const std::string& method = opts.methods[mi];
          Clustering c;
          if (method == "simpleherm") {
            SimpleHermOptions o;
            o.compute_lambda2 = false;
            c = simple_herm(inst.graph, grid.k, solver, kmeans, o);
            unconverged[cell * nm + mi] = c.diagnostics.residual1 > solver.tolerance;
          } else {
            BaselineConfig b;
            b.kmeans = kmeans;
            c = method == "ddsym" ? dd_sym_baseline(inst.graph, grid.k, b) : herm_rw_baseline(inst.graph, grid.k, b);
          }
          ari[cell * nm + mi] = adjusted_rand_index(c.partition(), inst.truth);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(opts.threads > 0 ? opts.threads : default_threads(),
                                                static_cast<int>(cells)));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  clock.mark("runs");

  json summary = json::array();
  {
    auto f = open_artifact(m, opts.out, "sweep.csv");
    f << "method,p,eta,seed,ari\n";
    for (std::size_t mi = 0; mi < nm; ++mi)
      for (std::size_t pi = 0; pi < np; ++pi)
        for (std::size_t ei = 0; ei < ne; ++ei) {
          const std::string prefix = opts.methods[mi] + ',' + format_double(grid.p_values[pi]) + ',' +
                                     format_double(grid.eta_values[ei]) + ',';
          double sum = 0.0;
          Index bad = 0;
          for (std::size_t s = 0; s < ns; ++s) {
            const std::size_t idx = ((pi * ne + ei) * ns + s) * nm + mi;
            f << prefix << (opts.seed + s) << ',' << format_double(ari[idx]) << '\n';
            sum += ari[idx];
            bad += unconverged[idx];
          }
          const double mean = sum / static_cast<double>(ns);
          f << prefix << "mean," << format_double(mean) << '\n';
          summary.push_back({{"method", opts.methods[mi]},
                             {"p", grid.p_values[pi]},
                             {"eta", grid.eta_values[ei]},
                             {"mean_ari", mean},
                             {"unconverged_runs", bad}});
        }
  }
  write_json(m, opts.out, "sweep_summary.json", summary);
  clock.mark("write");
  m.params["threads_used"] = threads;
  finish(m, opts.out);
  return m;
}

RunManifest cmd_trade(const TradeOptions& opts) {
  if (opts.inputs.empty()) throw InputError("trade needs at least one input CSV");
  if (opts.k < 1) throw InputError("k must be at least 1");
  RunManifest m;
  m.subcommand = "trade";
  m.params = to_params(opts);
  for (const auto& p : opts.inputs) m.inputs.push_back(absolute_string(p));
  if (opts.index) m.inputs.push_back(absolute_string(*opts.index));
  open_out(m, opts.out);
  StageClock clock(m);

  const TradeFilter filter{opts.commodity, std::set<int>(opts.years.begin(), opts.years.end())};
  std::map<int, std::vector<TradeRecord>> by_year;
  TradeParseDiagnostics total;
  for (const auto& path : opts.inputs) {
    TradeParseResult r = parse_trade_csv(path, opts.columns, filter);
    total.rows_read += r.diagnostics.rows_read;
    total.rows_skipped += r.diagnostics.rows_skipped;
    total.rows_filtered += r.diagnostics.rows_filtered;
    for (const auto& [reason, count] : r.diagnostics.skip_reasons) total.skip_reasons[reason] += count;
    for (auto& rec : r.records) by_year[rec.year].push_back(std::move(rec));
  }
  clock.mark("parse");

  std::vector<int> years = opts.years;
  if (years.empty())
    for (const auto& [year, recs] : by_year) years.push_back(year);
  std::sort(years.begin(), years.end());
  years.erase(std::unique(years.begin(), years.end()), years.end());

  json report;
  report["rows_read"] = total.rows_read;
  report["rows_skipped"] = total.rows_skipped;
  report["rows_filtered"] = total.rows_filtered;
  report["skip_reasons"] = total.skip_reasons;
  report["skipped_years"] = json::array();

  std::map<int, ExportMatrix> matrices;
  for (int year : years) {
    const auto it = by_year.find(year);
    if (it == by_year.end() || it->second.empty()) {
      report["skipped_years"].push_back({{"year", year}, {"reason", "no matching records"}});
      continue;
    }
    matrices.emplace(year, reconcile_exports(it->second));
  }
  CountryIndex index;
  if (opts.index) {
    index = CountryIndex(read_code_list(*opts.index));
  } else {
    std::vector<const ExportMatrix*> all;
    for (const auto& [year, e] : matrices) all.push_back(&e);
    index = CountryIndex::from_exports(all);
  }
  {
    auto f = open_artifact(m, opts.out, "countries.tsv");
    write_sidecar(f, index.codes());
  }
  clock.mark("reconcile");

  std::vector<Snapshot> snapshots;
  std::vector<int> clustered_years;
  json per_year = json::array();
  for (const auto& [year, e] : matrices) {
    const NetTradeGraph net = net_trade_graph(e, index);
    const WeightedDigraph& g = net.graph;
    json yj{{"year", year},
            {"records", by_year[year].size()},
            {"pairs", e.flows.size()},
            {"reconciled_by_max", e.reconciled_by_max},
            {"single_view", e.single_view},
            {"edges", g.num_edges()},
            {"isolated", g.num_isolated()},
            {"unknown_codes", net.unknown_codes}};
    const Index active = g.num_vertices() - g.num_isolated();
    if (opts.k > active) {
      report["skipped_years"].push_back(
          {{"year", year}, {"reason", "k exceeds the " + std::to_string(active) + " trading countries"}});
      per_year.push_back(yj);
      continue;
    }
    {
      auto f = open_artifact(m, opts.out, "graph_" + std::to_string(year) + ".tsv");
      write_edge_list(f, g);
    }
    SolverConfig solver;
    solver.seed = opts.seed;
    KMeansConfig kmeans;
    kmeans.seed = opts.seed;
    const Clustering c = simple_herm(g, opts.k, solver, kmeans);
    yj["lambda1"] = c.diagnostics.lambda1;
    yj["lambda2"] = c.diagnostics.lambda2;
    yj["lambda2_converged"] = c.diagnostics.lambda2_converged;
    yj.update(cluster_summary(g, c));
    per_year.push_back(yj);

    auto f = open_artifact(m, opts.out, "labels_" + std::to_string(year) + ".csv");
    // Cluster k-1 is where the net flow chain starts, cluster 0 where it ends.
    auto role = [&](int l) -> const char* {
      if (l == kIsolatedLabel) return "isolated";
      if (l == opts.k - 1) return "start";
      return l == 0 ? "end" : "middle";
    };
    f << "country,vertex_id,cluster,chain_role\n";
    for (Index u = 0; u < g.num_vertices(); ++u) {
      const int l = c.labels[static_cast<std::size_t>(u)];
      f << csv_field(index.code(u)) << ',' << u << ',' << l << ',' << role(l) << '\n';
    }

    Snapshot snap;
    snap.ids = index.codes();
    snap.labels = c.labels;
    snap.k = opts.k;
    snap.weights.assign(g.degree().data(), g.degree().data() + g.num_vertices());
    snapshots.push_back(std::move(snap));
    clustered_years.push_back(year);
    clock.mark("cluster_" + std::to_string(year));
  }
  report["years"] = per_year;

  std::vector<double> drift_count, drift_volume;
  if (snapshots.size() >= 2) {
    drift_count = drift_series(snapshots, DifferenceWeight::count);
    drift_volume = drift_series(snapshots, DifferenceWeight::volume);
  }
  {
    auto f = open_artifact(m, opts.out, "drift.csv");
    f << "from_year,to_year,symmetric_difference,volume_symmetric_difference\n";
    for (std::size_t i = 0; i < drift_count.size(); ++i)
      f << clustered_years[i] << ',' << clustered_years[i + 1] << ',' << format_double(drift_count[i]) << ','
        << format_double(drift_volume[i]) << '\n';
  }
  write_json(m, opts.out, "ingest_diagnostics.json", report);
  clock.mark("write");
  finish(m, opts.out);
  return m;
}

RunManifest cmd_replay(const fs::path& manifest, const fs::path& out) {
  const RunManifest m = RunManifest::read(manifest);
  try {
    if (m.subcommand == "generate") {
      GenerateOptions o = generate_from(m.params);
      o.out = out;
      return cmd_generate(o);
    }
    if (m.subcommand == "cluster") {
      ClusterOptions o = cluster_from(m.params);
      o.out = out;
      return cmd_cluster(o);
    }
    if (m.subcommand == "sweep") {
      SweepOptions o = sweep_from(m.params);
      o.out = out;
      return cmd_sweep(o);
    }
    if (m.subcommand == "trade") {
      TradeOptions o = trade_from(m.params);
      o.out = out;
      return cmd_trade(o);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("manifest parameters are incomplete: ") + e.what());
  }
  throw InputError("manifest names unknown subcommand '" + m.subcommand + "'");
}

}  // namespace hermclust::cli
