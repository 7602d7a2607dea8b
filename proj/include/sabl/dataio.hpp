#pragma once

// Ingestion, validation and filtering of systems, bug reports, smell
// reports and technique scores.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sabl/corpus.hpp"
#include "sabl/ir.hpp"
#include "sabl/smell.hpp"

namespace sabl::io {

namespace fs = std::filesystem;

struct BugReportRecord {
  std::string id;
  std::string summary;
  std::string description;
  std::set<std::string> gold;
};

/// One project version. Relative paths are resolved against the dataset
/// manifest's directory.
struct SystemDescriptor {
  std::string project;
  std::string version;
  fs::path snapshot;                 // source tree; may be empty when only external scores are used
  fs::path bug_reports;              // JSON file, unless inline_reports is set
  std::optional<std::vector<BugReportRecord>> inline_reports;
  fs::path smells;                   // smell report JSON
  std::map<std::string, fs::path> scores;  // technique -> JSON lines file

  std::string label() const { return project + " " + version; }
};

/// {"systems": [descriptor, ...]} or a single descriptor object. Throws
/// InputError on malformed input or duplicate versions within a project.
std::vector<SystemDescriptor> load_dataset(const fs::path& manifest);

/// A parsed JSON document; invalid UTF-8 is replaced and reported in warnings.
nlohmann::json parse_json_file(const fs::path& path, std::vector<std::string>& warnings);

/// A JSON array of {"id", "summary", "description", "gold"}, or an object
/// holding that array under "reports".
std::vector<BugReportRecord> parse_bug_reports(const nlohmann::json& doc, const std::string& source);
std::vector<BugReportRecord> load_bug_reports(const fs::path& path, std::vector<std::string>& warnings);
void write_bug_reports(std::ostream& out, std::span<const BugReportRecord> reports);

/// JSON array of {"type", "module", "method"?, "severity"}. Severity must be
/// 1..10 and a method signature is required exactly for method-level types.
smell::SmellReport parse_smell_report(const nlohmann::json& doc, const std::string& source);
smell::SmellReport load_smell_report(const fs::path& path, std::vector<std::string>& warnings);

struct TechniqueScores {
  std::string technique;
  std::map<std::string, ir::ScoreMap> by_bug;
};

/// JSON lines {"bug", "module", "score"}; "NaN"/"inf" strings (or null) are
/// kept as non-finite values for validation to flag. Lines with a
/// "manifest" key are skipped. Duplicate (bug, module) pairs are an error;
/// bugs outside known_bugs (when given) produce a warning.
TechniqueScores load_external_scores(const fs::path& path, const std::string& technique,
                                     const std::set<std::string>* known_bugs, std::vector<std::string>& warnings);

/// One JSON line per ranked module, in ranking order.
void write_scores_jsonl(std::ostream& out, const ir::ScoredRanking& ranking);

struct SystemSnapshot {
  SystemDescriptor descriptor;
  std::vector<std::string> modules;  // snapshot source files, ascending
  std::uint64_t content_hash = 0;
  std::vector<BugReportRecord> reports;
  smell::SmellReport smells;
  std::map<std::string, TechniqueScores> scores;  // loaded external plus computed native techniques
  std::vector<std::string> warnings;

  std::string label() const { return descriptor.label(); }
  const BugReportRecord* find_report(const std::string& id) const;
};

struct LoadOptions {
  corpus::CorpusOptions corpus;
};

/// Throws InputError for malformed files (with path and line when known).
SystemSnapshot load_system(const SystemDescriptor& descriptor, const LoadOptions& options = {});

enum class Exclusion { kNanScore, kNoGoldInRanking, kMissingTechnique, kNoSmells, kFewerThanFiveReports };

std::string_view exclusion_name(Exclusion reason);

/// nullopt when valid. A null score map means the technique produced no
/// ranking for the report.
std::optional<Exclusion> validate_ranking(const ir::ScoreMap* scores, const std::set<std::string>& gold);
std::optional<Exclusion> validate_ranking(const ir::ScoredRanking& ranking, const std::set<std::string>& gold);

struct ExcludedReport {
  std::string system;
  std::string bug_id;
  Exclusion reason;
  std::string technique;
};

struct ExcludedSystem {
  std::string system;
  Exclusion reason;
};

struct ValidationReport {
  std::vector<ExcludedReport> reports;
  std::vector<ExcludedSystem> systems;

  nlohmann::json to_json() const;
  void write_text(std::ostream& out) const;
};

struct FilterResult {
  std::vector<SystemSnapshot> systems;
  ValidationReport report;
};

struct FilterOptions {
  std::size_t min_reports = 5;
};

/// Drops reports whose ranking is invalid under any listed technique, then
/// systems with no smells, then systems with fewer than min_reports
/// surviving reports. Throws Error("dataset empty after filtering").
FilterResult filter_dataset(std::vector<SystemSnapshot> systems, std::span<const std::string> techniques,
                            const FilterOptions& options = {});

struct Bench4BLOptions {
  std::string source_prefix;  // prepended to converted gold paths
};

/// Converts a Bench4BL/BugLocator bug repository XML file. Fixed files given
/// as dotted class names ("org.foo.Bar.java") become paths ("org/foo/Bar.java").
std::vector<BugReportRecord> convert_bench4bl_bugs(const fs::path& xml, const Bench4BLOptions& options,
                                                   std::vector<std::string>& warnings);

}  // namespace sabl::io
