#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace sabl::cli {

/// Provenance block embedded in every report.
struct RunManifest {
  std::string command;
  std::string tool_version;
  std::string timestamp;    // UTC, ISO 8601; SOURCE_DATE_EPOCH is honoured
  std::string config_hash;  // run-config file fingerprint, "none" without one
  std::vector<std::pair<std::string, std::string>> inputs;  // path -> fingerprint
  bool random_free = true;

  void add_file(const std::string& path);
  void add_hash(const std::string& name, std::uint64_t hash);

  nlohmann::json to_json() const;
  /// "# manifest {...}" comment line for CSV and text reports.
  std::string comment_line() const;
};

RunManifest make_manifest(const std::vector<std::string>& args, const std::string& run_config);

}  // namespace sabl::cli
