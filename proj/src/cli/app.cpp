#include <algorithm>
#include <ostream>

#include "CLI11.hpp"
#include "hermclust/cli/commands.hpp"
#include "hermclust/cli/config.hpp"

namespace hermclust::cli {

namespace {

// Pulls `--config FILE` / `--config=FILE` out of args and splices the file's
// entries in front of the remaining flags of the subcommand.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  if (args.empty()) return args;
  std::optional<std::string> path;
  std::vector<std::string> rest;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw InputError("--config needs a file name");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return args;
  std::vector<std::string> merged{args[0]};
  for (auto& a : merge_config(read_config(*path), rest)) merged.push_back(std::move(a));
  return merged;
}

char parse_delimiter(const std::string& s) {
  if (s == "tab" || s == "\\t" || s == "\t") return '\t';
  if (s.size() != 1) throw InputError("--delimiter must be a single character or 'tab'");
  return s[0];
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hermitian spectral clustering of directed graphs"};
  app.name("hermclust");
  app.require_subcommand(1);
  app.set_version_flag("--version", kArtifactVersion);
  // --config is consumed by apply_config; the options exist for --help.
  std::string config_file;
  const std::string config_help = "key=value file; command-line flags take precedence";

  GenerateOptions gen;
  std::string gen_variant = "all_pairs";
  std::string gen_out;
  auto* g = app.add_subcommand("generate", "Sample a DSBM graph with its ground truth");
  g->add_option("--config", config_file, config_help);
  g->add_option("--n", gen.dsbm.n, "total vertex count")->required();
  g->add_option("--k", gen.dsbm.k, "number of blocks (must divide n)")->required();
  g->add_option("--p", gen.dsbm.p, "intra-block edge probability")->required();
  g->add_option("--q", gen.dsbm.q, "inter-block edge probability")->required();
  g->add_option("--eta", gen.dsbm.eta, "direction bias along the chain")->required();
  g->add_option("--variant", gen_variant, "all_pairs or path_only")
      ->check(CLI::IsMember({"all_pairs", "path_only"}))
      ->capture_default_str();
  g->add_option("--seed", gen.dsbm.seed)->capture_default_str();
  g->add_option("--out", gen_out, "output directory")->required();

  ClusterOptions cl;
  std::string cl_graph, cl_names, cl_out, cl_merge = "net";
  double cl_lambda2 = 0.0;
  auto* c = app.add_subcommand("cluster", "Cluster a directed graph with SimpleHerm");
  c->add_option("--config", config_file, config_help);
  c->add_option("--graph", cl_graph, "edge list: src<TAB>dst<TAB>weight")->required();
  c->add_option("--names", cl_names, "sidecar id<TAB>label file");
  c->add_option("--k", cl.k, "number of clusters")->required();
  c->add_flag("--sparsify", cl.sparsify, "cluster a sampled sparsifier instead of the graph");
  c->add_option("--alpha-s", cl.alpha_s, "sparsifier sampling constant")->capture_default_str();
  auto* l2 = c->add_option("--lambda2", cl_lambda2, "lambda2 used by the sparsifier (estimated if absent)");
  c->add_option("--seed", cl.seed)->capture_default_str();
  c->add_option("--baseline", cl.baseline, "also run a comparison method")
      ->check(CLI::IsMember({"none", "ddsym", "hermrw"}))
      ->capture_default_str();
  c->add_option("--merge", cl_merge, "reciprocal edge policy: reject, net or sum")
      ->check(CLI::IsMember({"reject", "net", "sum"}))
      ->capture_default_str();
  c->add_option("--restarts", cl.restarts, "k-means restarts")->capture_default_str();
  c->add_option("--tolerance", cl.tolerance, "eigensolver residual tolerance")->capture_default_str();
  c->add_option("--out", cl_out, "output directory")->required();

  SweepOptions sw;
  std::string sw_out;
  auto* s = app.add_subcommand("sweep", "ARI grid over (p, eta) for SimpleHerm and the baselines");
  s->add_option("--config", config_file, config_help);
  s->add_option("--protocol,protocol", sw.protocol, "fig1 or fig2")
      ->check(CLI::IsMember({"fig1", "fig2"}))
      ->capture_default_str();
  s->add_option("--scale", sw.scale, "fraction of the protocol's n")->capture_default_str();
  s->add_option("--n", sw.n, "explicit total vertex count (overrides --scale)");
  s->add_option("--p-values", sw.p_values, "comma separated")->delimiter(',');
  s->add_option("--eta-values", sw.eta_values, "comma separated")->delimiter(',');
  s->add_option("--seeds", sw.seeds, "runs per grid point")->capture_default_str();
  s->add_option("--seed", sw.seed, "first seed")->capture_default_str();
  s->add_option("--methods", sw.methods, "simpleherm, ddsym, hermrw")->delimiter(',')->capture_default_str();
  s->add_option("--threads", sw.threads, "worker threads (default HERMCLUST_THREADS or all cores)");
  s->add_option("--out", sw_out, "output directory")->required();

  TradeOptions tr;
  std::vector<std::string> tr_inputs;
  std::string tr_out, tr_index, tr_delim = ",";
  auto* t = app.add_subcommand("trade", "Cluster yearly net-trade graphs and measure drift");
  t->add_option("--config", config_file, config_help);
  t->add_option("--input,inputs", tr_inputs, "trade CSV file(s)")->required()->delimiter(',');
  t->add_option("--commodity", tr.commodity, "commodity code prefix");
  t->add_option("--years", tr.years, "comma separated; default all")->delimiter(',');
  t->add_option("--k", tr.k, "number of clusters")->capture_default_str();
  t->add_option("--index", tr_index, "country code list, one per line");
  t->add_option("--seed", tr.seed)->capture_default_str();
  t->add_option("--reporter-col", tr.columns.reporter)->capture_default_str();
  t->add_option("--partner-col", tr.columns.partner)->capture_default_str();
  t->add_option("--flow-col", tr.columns.flow)->capture_default_str();
  t->add_option("--commodity-col", tr.columns.commodity)->capture_default_str();
  t->add_option("--year-col", tr.columns.year)->capture_default_str();
  t->add_option("--value-col", tr.columns.value)->capture_default_str();
  t->add_option("--delimiter", tr_delim, "field delimiter, or 'tab'")->capture_default_str();
  t->add_option("--out", tr_out, "output directory")->required();

  std::string rp_manifest, rp_out;
  auto* r = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  r->add_option("--manifest,manifest", rp_manifest, "manifest.json of an earlier run")->required();
  r->add_option("--out", rp_out, "output directory")->required();

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    RunManifest m;
    if (g->parsed()) {
      gen.dsbm.variant = gen_variant == "path_only" ? DsbmVariant::path_only : DsbmVariant::all_pairs;
      gen.out = gen_out;
      m = cmd_generate(gen);
    } else if (c->parsed()) {
      cl.graph = cl_graph;
      if (!cl_names.empty()) cl.names = cl_names;
      if (l2->count() > 0) cl.lambda2 = cl_lambda2;
      cl.merge = cl_merge == "reject" ? MergePolicy::reject : cl_merge == "sum" ? MergePolicy::sum : MergePolicy::net;
      cl.out = cl_out;
      m = cmd_cluster(cl);
    } else if (s->parsed()) {
      sw.out = sw_out;
      m = cmd_sweep(sw);
    } else if (t->parsed()) {
      for (const auto& p : tr_inputs) tr.inputs.emplace_back(p);
      if (!tr_index.empty()) tr.index = tr_index;
      tr.columns.delimiter = parse_delimiter(tr_delim);
      tr.out = tr_out;
      m = cmd_trade(tr);
    } else {
      m = cmd_replay(rp_manifest, rp_out);
    }
    out << m.subcommand << ": wrote " << m.artifacts.size() << " files to " << m.out << " in "
        << m.total_seconds() << " s\n";
    return kExitOk;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace hermclust::cli
