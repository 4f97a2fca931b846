#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace hermclust::cli {

/// Bumped whenever an output schema changes.
inline constexpr const char* kArtifactVersion = "hermclust-artifacts/1";

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

/// Everything needed to re-run a subcommand: resolved parameters (seeds
/// included), input and output paths, plus wall-clock stage timings.
struct RunManifest {
  std::string subcommand;
  nlohmann::json params = nlohmann::json::object();
  std::vector<std::string> inputs;
  std::string out;
  std::string version = kArtifactVersion;
  std::vector<StageTiming> timings;
  std::vector<std::string> artifacts;  ///< file names written into out

  double total_seconds() const;
  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);

  void write(const std::filesystem::path& path) const;
  static RunManifest read(const std::filesystem::path& path);
};

/// Appends (stage, elapsed since the previous mark) to a manifest.
class StageClock {
 public:
  explicit StageClock(RunManifest& manifest) : manifest_(manifest), last_(Clock::now()) {}
  void mark(std::string stage);

 private:
  using Clock = std::chrono::steady_clock;
  RunManifest& manifest_;
  Clock::time_point last_;
};

}  // namespace hermclust::cli
