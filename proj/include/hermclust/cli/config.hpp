#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hermclust::cli {

/// Ordered key=value pairs from a config file.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// One `key = value` per line. `#` starts a comment, blank lines are skipped,
/// a leading `--` on the key is tolerated. Throws InputError on a line
/// without '=' or with an empty key.
ConfigEntries read_config(std::istream& in);
ConfigEntries read_config(const std::filesystem::path& path);

/// Turns config entries into `--key=value` tokens placed before `args`,
/// skipping keys already given in `args`, so command-line flags win.
std::vector<std::string> merge_config(const ConfigEntries& config, const std::vector<std::string>& args);

}  // namespace hermclust::cli
