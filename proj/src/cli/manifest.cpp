#include "hermclust/cli/manifest.hpp"

#include <fstream>

#include "hermclust/common.hpp"

namespace hermclust::cli {

double RunManifest::total_seconds() const {
  double total = 0.0;
  for (const auto& t : timings) total += t.seconds;
  return total;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["version"] = version;
  j["params"] = params;
  j["inputs"] = inputs;
  j["out"] = out;
  j["artifacts"] = artifacts;
  auto& t = j["timings"] = nlohmann::json::array();
  for (const auto& s : timings) t.push_back({{"stage", s.stage}, {"seconds", s.seconds}});
  j["total_seconds"] = total_seconds();
  return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  try {
    m.subcommand = j.at("subcommand").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.params = j.at("params");
    m.inputs = j.value("inputs", std::vector<std::string>{});
    m.out = j.value("out", std::string{});
    m.artifacts = j.value("artifacts", std::vector<std::string>{});
    for (const auto& s : j.value("timings", nlohmann::json::array()))
      m.timings.push_back({s.at("stage").get<std::string>(), s.at("seconds").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed manifest: ") + e.what());
  }
  if (m.version != kArtifactVersion)
    throw InputError("manifest version " + m.version + " is not " + kArtifactVersion);
  return m;
}

void RunManifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
}

RunManifest RunManifest::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("manifest " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(j);
}

void StageClock::mark(std::string stage) {
  const auto now = Clock::now();
  manifest_.timings.push_back({std::move(stage), std::chrono::duration<double>(now - last_).count()});
  last_ = now;
}

}  // namespace hermclust::cli
