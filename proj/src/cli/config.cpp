#include "hermclust/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "hermclust/common.hpp"

namespace hermclust::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// "--k" or "--k=3" both name the key "k".
bool names_key(const std::string& token, const std::string& key) {
  if (token.rfind("--", 0) != 0) return false;
  const std::string_view body = std::string_view(token).substr(2);
  return body == key || (body.size() > key.size() && body.substr(0, key.size()) == key && body[key.size()] == '=');
}

}  // namespace

ConfigEntries read_config(std::istream& in) {
  ConfigEntries out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw InputError("config line " + std::to_string(line_no) + ": expected key=value");
    std::string key = trim(std::string_view(text).substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty()) throw InputError("config line " + std::to_string(line_no) + ": empty key");
    out.emplace_back(std::move(key), trim(std::string_view(text).substr(eq + 1)));
  }
  return out;
}

ConfigEntries read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path.string());
  return read_config(in);
}

std::vector<std::string> merge_config(const ConfigEntries& config, const std::vector<std::string>& args) {
  std::vector<std::string> merged;
  for (const auto& [key, value] : config) {
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) { return names_key(a, key); });
    if (!given) merged.push_back("--" + key + "=" + value);
  }
  merged.insert(merged.end(), args.begin(), args.end());
  return merged;
}

}  // namespace hermclust::cli
