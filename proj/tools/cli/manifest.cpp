#include "manifest.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>

#include "sabl/hash.hpp"
#include "sabl/version.hpp"

namespace sabl::cli {

namespace {

std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::atoll(epoch));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void RunManifest::add_file(const std::string& path) { inputs.emplace_back(path, to_hex(fingerprint_file(path))); }

void RunManifest::add_hash(const std::string& name, std::uint64_t hash) { inputs.emplace_back(name, to_hex(hash)); }

nlohmann::json RunManifest::to_json() const {
  nlohmann::json in = nlohmann::json::object();
  for (const auto& [k, v] : inputs) in[k] = v;
  return {{"command", command},       {"tool_version", tool_version}, {"timestamp", timestamp},
          {"config_hash", config_hash}, {"inputs", in},                 {"random_free", random_free}};
}

std::string RunManifest::comment_line() const { return "# manifest " + to_json().dump() + "\n"; }

RunManifest make_manifest(const std::vector<std::string>& args, const std::string& run_config) {
  RunManifest m;
  for (std::size_t i = 0; i < args.size(); ++i) m.command += (i ? " " : "") + args[i];
  m.tool_version = std::string(kVersion);
  m.timestamp = utc_timestamp();
  m.config_hash = run_config.empty() ? "none" : to_hex(fingerprint_file(run_config));
  return m;
}

}  // namespace sabl::cli
