#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hermclust/cli/manifest.hpp"
#include "hermclust/dsbm.hpp"
#include "hermclust/evaluation.hpp"
#include "hermclust/trade.hpp"

namespace hermclust::cli {

namespace fs = std::filesystem;

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,         ///< anything not covered below
  kExitInputError = 2,      ///< bad flags, unreadable or invalid input, size guards
  kExitNonConvergence = 3,  ///< eigensolver missed its tolerance
};

struct GenerateOptions {
  DsbmParams dsbm;
  fs::path out;
};

struct ClusterOptions {
  fs::path graph;
  std::optional<fs::path> names;  ///< sidecar `id<TAB>label`; endpoints may then be labels
  int k = 2;
  bool sparsify = false;
  double alpha_s = 1.0;
  std::optional<double> lambda2;  ///< sparsifier's lambda2; estimated when absent
  std::uint64_t seed = 0;
  std::string baseline = "none";  ///< none | ddsym | hermrw
  MergePolicy merge = MergePolicy::net;
  int restarts = 16;
  double tolerance = 1e-8;
  fs::path out;
};

struct SweepOptions {
  std::string protocol = "fig1";  ///< fig1 | fig2
  double scale = 1.0;             ///< multiplies the protocol's n (1000 or 2000)
  Index n = 0;                    ///< explicit n, overrides scale
  std::vector<double> p_values;   ///< empty selects the protocol grid
  std::vector<double> eta_values;
  int seeds = 5;
  std::uint64_t seed = 1;         ///< first seed; runs use seed, seed+1, ...
  std::vector<std::string> methods{"simpleherm", "ddsym", "hermrw"};
  int threads = 0;                ///< 0: HERMCLUST_THREADS, else hardware concurrency
  fs::path out;
};

struct TradeOptions {
  std::vector<fs::path> inputs;
  std::string commodity;
  std::vector<int> years;  ///< empty: every year present in the data
  int k = 4;
  ColumnMap columns;
  std::optional<fs::path> index;  ///< one country code per line; default is the union over years
  std::uint64_t seed = 0;
  fs::path out;
};

/// Resolved sweep grid for a protocol.
struct SweepGrid {
  Index n = 0;
  int k = 0;
  DsbmVariant variant = DsbmVariant::all_pairs;
  std::vector<double> p_values;
  std::vector<double> eta_values;
};
SweepGrid resolve_grid(const SweepOptions& opts);

/// Each command writes only inside opts.out (created if missing) and returns
/// the manifest it also wrote there as manifest.json.
RunManifest cmd_generate(const GenerateOptions& opts);
RunManifest cmd_cluster(const ClusterOptions& opts);
RunManifest cmd_sweep(const SweepOptions& opts);
RunManifest cmd_trade(const TradeOptions& opts);

/// Re-runs the command recorded in a manifest, writing into `out`.
RunManifest cmd_replay(const fs::path& manifest, const fs::path& out);

/// Thread count from HERMCLUST_THREADS, else hardware concurrency (at least 1).
int default_threads();

/// Full command line (without the program name). Errors are reported on
/// `err` and mapped to ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hermclust::cli
