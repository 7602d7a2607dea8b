#include "sabl/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "sabl/error.hpp"
#include "sabl/text_util.hpp"

namespace sabl::io {

using nlohmann::json;

namespace {

std::string where(const std::string& source, std::size_t line) {
  return line > 0 ? source + ":" + std::to_string(line) : source;
}

std::string sanitized_file(const fs::path& path, std::vector<std::string>& warnings) {
  SanitizedText clean = sanitize_utf8(read_file(path.string()));
  if (clean.replacements > 0) {
    warnings.push_back(path.string() + ": replaced " + std::to_string(clean.replacements) +
                       " invalid UTF-8 sequence(s)");
  }
  return std::move(clean.text);
}

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(where(source, line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0)) + ": " + e.what());
  }
}

const json& require(const json& obj, const char* key, const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(context + ": missing field \"" + key + "\"");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& context) {
  const json& v = require(obj, key, context);
  if (!v.is_string()) throw InputError(context + ": field \"" + key + "\" must be a string");
  return v.get<std::string>();
}

std::string optional_string(const json& obj, const char* key, const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw InputError(context + ": field \"" + key + "\" must be a string");
  return it->get<std::string>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) return {};
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

double parse_score(const json& v, const std::string& context) {
  if (v.is_number()) return v.get<double>();
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    if (s == "-inf" || s == "-infinity") return -std::numeric_limits<double>::infinity();
  }
  throw InputError(context + ": score must be a number or a NaN/inf literal");
}

SystemDescriptor parse_descriptor(const json& obj, const fs::path& base, const std::string& context) {
  if (!obj.is_object()) throw InputError(context + ": system entry must be an object");
  SystemDescriptor d;
  d.project = require_string(obj, "project", context);
  d.version = require_string(obj, "version", context);
  d.snapshot = resolve(base, optional_string(obj, "snapshot", context));
  d.smells = resolve(base, require_string(obj, "smells", context));
  const json& reports = require(obj, "bug_reports", context);
  if (reports.is_string()) {
    d.bug_reports = resolve(base, reports.get<std::string>());
  } else {
    d.inline_reports = parse_bug_reports(reports, context + " bug_reports");
  }
  if (auto it = obj.find("scores"); it != obj.end()) {
    if (!it->is_object()) throw InputError(context + ": \"scores\" must map technique names to paths");
    for (const auto& [tech, path] : it->items()) {
      if (!path.is_string()) throw InputError(context + ": score path for " + tech + " must be a string");
      d.scores[tech] = resolve(base, path.get<std::string>());
    }
  }
  return d;
}

}  // namespace

json parse_json_file(const fs::path& path, std::vector<std::string>& warnings) {
  return parse_text(sanitized_file(path, warnings), path.string());
}

std::vector<SystemDescriptor> load_dataset(const fs::path& manifest) {
  std::vector<std::string> warnings;
  json doc = parse_json_file(manifest, warnings);
  fs::path base = manifest.parent_path();
  std::vector<SystemDescriptor> out;
  if (doc.is_object() && doc.contains("systems")) {
    const json& systems = doc["systems"];
    if (!systems.is_array()) throw InputError(manifest.string() + ": \"systems\" must be an array");
    for (std::size_t i = 0; i < systems.size(); ++i) {
      out.push_back(parse_descriptor(systems[i], base, manifest.string() + " systems[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(parse_descriptor(doc, base, manifest.string()));
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& d : out) {
    if (!seen.emplace(d.project, d.version).second) {
      throw InputError(manifest.string() + ": duplicate version \"" + d.version + "\" in project " + d.project);
    }
  }
  return out;
}

std::vector<BugReportRecord> parse_bug_reports(const json& input, const std::string& source) {
  const json& doc = input.is_object() && input.contains("reports") ? input["reports"] : input;
  if (!doc.is_array()) throw InputError(source + ": bug reports must be a JSON array");
  std::vector<BugReportRecord> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& r = doc[i];
    std::string ctx = source + " [" + std::to_string(i) + "]";
    if (!r.is_object()) throw InputError(ctx + ": bug report must be an object");
    BugReportRecord rec;
    const json& id = require(r, "id", ctx);
    if (id.is_number_integer()) {
      rec.id = std::to_string(id.get<long long>());
    } else if (id.is_string()) {
      rec.id = id.get<std::string>();
    } else {
      throw InputError(ctx + ": id must be a string or integer");
    }
    rec.summary = optional_string(r, "summary", ctx);
    rec.description = optional_string(r, "description", ctx);
    const json& gold = require(r, "gold", ctx);
    if (!gold.is_array()) throw InputError(ctx + ": gold must be an array of module paths");
    for (const json& g : gold) {
      if (!g.is_string()) throw InputError(ctx + ": gold entries must be strings");
      rec.gold.insert(normalize_module_path(g.get<std::string>()));
    }
    if (rec.gold.empty()) throw InputError(ctx + ": gold set of bug " + rec.id + " is empty");
    if (!ids.insert(rec.id).second) throw InputError(ctx + ": duplicate bug id " + rec.id);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<BugReportRecord> load_bug_reports(const fs::path& path, std::vector<std::string>& warnings) {
  return parse_bug_reports(parse_json_file(path, warnings), path.string());
}

void write_bug_reports(std::ostream& out, std::span<const BugReportRecord> reports) {
  json doc = json::array();
  for (const auto& r : reports) {
    doc.push_back({{"id", r.id}, {"summary", r.summary}, {"description", r.description}, {"gold", r.gold}});
  }
  out << doc.dump(2) << '\n';
}

smell::SmellReport parse_smell_report(const json& doc, const std::string& source) {
  const json* items = &doc;
  if (doc.is_object() && doc.contains("smells")) items = &doc["smells"];
  if (!items->is_array()) throw InputError(source + ": smell report must be a JSON array");
  std::vector<smell::SmellInstance> instances;
  instances.reserve(items->size());
  for (std::size_t i = 0; i < items->size(); ++i) {
    const json& s = (*items)[i];
    std::string ctx = source + " [" + std::to_string(i) + "]";
    if (!s.is_object()) throw InputError(ctx + ": smell instance must be an object");
    std::string type_name = require_string(s, "type", ctx);
    auto type = smell::parse_smell_type(type_name);
    if (!type) throw InputError(ctx + ": unknown smell type \"" + type_name + "\"");
    std::string module = normalize_module_path(require_string(s, "module", ctx));
    ctx += " (" + type_name + " in " + module + ")";
    const json& sev = require(s, "severity", ctx);
    if (!sev.is_number_integer()) throw InputError(ctx + ": severity must be an integer");
    long long severity = sev.get<long long>();
    if (severity < 1 || severity > 10) {
      throw InputError(ctx + ": severity " + std::to_string(severity) + " outside 1..10");
    }
    std::string method = optional_string(s, "method", ctx);
    bool method_level = smell::granularity_of(*type) == smell::Granularity::kMethod;
    if (method_level && method.empty()) throw InputError(ctx + ": method-level smell requires \"method\"");
    if (!method_level && !method.empty()) throw InputError(ctx + ": class-level smell must not carry \"method\"");
    smell::SmellInstance inst{*type, std::move(module), std::nullopt, static_cast<int>(severity)};
    if (method_level) inst.method = std::move(method);
    instances.push_back(std::move(inst));
  }
  return smell::SmellReport(std::move(instances));
}

smell::SmellReport load_smell_report(const fs::path& path, std::vector<std::string>& warnings) {
  return parse_smell_report(parse_json_file(path, warnings), path.string());
}

TechniqueScores load_external_scores(const fs::path& path, const std::string& technique,
                                     const std::set<std::string>* known_bugs, std::vector<std::string>& warnings) {
  std::string text = sanitized_file(path, warnings);
  TechniqueScores out;
  out.technique = technique;
  std::set<std::string> unknown;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::string ctx = where(path.string(), line_no);
    json row;
    try {
      row = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(ctx + ": " + e.what());
    }
    if (!row.is_object()) throw InputError(ctx + ": expected a JSON object");
    if (row.contains("manifest")) continue;
    const json& bug = require(row, "bug", ctx);
    std::string bug_id = bug.is_number_integer() ? std::to_string(bug.get<long long>())
                         : bug.is_string()       ? bug.get<std::string>()
                                                 : throw InputError(ctx + ": bug must be a string or integer");
    std::string module = normalize_module_path(require_string(row, "module", ctx));
    double score = parse_score(require(row, "score", ctx), ctx);
    auto [it, inserted] = out.by_bug[bug_id].emplace(module, score);
    if (!inserted) throw InputError(ctx + ": duplicate entry for bug " + bug_id + " module " + module);
    if (known_bugs && !known_bugs->contains(bug_id)) unknown.insert(bug_id);
  }
  for (const auto& b : unknown) {
    warnings.push_back(path.string() + ": scores for unknown bug id " + b + " (kept)");
  }
  return out;
}

void write_scores_jsonl(std::ostream& out, const ir::ScoredRanking& ranking) {
  for (const auto& e : ranking.entries) {
    json row = {{"bug", ranking.bug_id}, {"module", e.module}};
    if (std::isfinite(e.score)) {
      row["score"] = e.score;
    } else {
      row["score"] = std::isnan(e.score) ? "NaN" : (e.score > 0 ? "inf" : "-inf");
    }
    out << row.dump() << '\n';
  }
}

const BugReportRecord* SystemSnapshot::find_report(const std::string& id) const {
  for (const auto& r : reports) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

SystemSnapshot load_system(const SystemDescriptor& descriptor, const LoadOptions& options) {
  SystemSnapshot snap;
  snap.descriptor = descriptor;
  std::vector<std::string>& warnings = snap.warnings;

  if (!descriptor.snapshot.empty()) {
    corpus::SourceListing listing = corpus::list_sources(descriptor.snapshot, options.corpus);
    snap.modules = std::move(listing.modules);
    snap.content_hash = listing.content_hash;
    warnings.insert(warnings.end(), listing.warnings.begin(), listing.warnings.end());
  }
  snap.reports = descriptor.inline_reports ? *descriptor.inline_reports
                                           : load_bug_reports(descriptor.bug_reports, warnings);
  snap.smells = load_smell_report(descriptor.smells, warnings);

  if (!descriptor.snapshot.empty()) {
    std::set<std::string> universe(snap.modules.begin(), snap.modules.end());
    for (const auto& r : snap.reports) {
      for (const auto& g : r.gold) {
        if (!universe.contains(g)) {
          warnings.push_back(descriptor.label() + ": gold module " + g + " of bug " + r.id + " not in snapshot");
        }
      }
    }
    std::size_t outside = 0;
    for (const auto& m : snap.smells.modules()) outside += universe.contains(m) ? 0 : 1;
    if (outside > 0) {
      warnings.push_back(descriptor.label() + ": " + std::to_string(outside) +
                         " smelly module(s) not in snapshot");
    }
  }

  std::set<std::string> bug_ids;
  for (const auto& r : snap.reports) bug_ids.insert(r.id);
  for (const auto& [tech, path] : descriptor.scores) {
    TechniqueScores scores = load_external_scores(path, tech, &bug_ids, warnings);
    if (!descriptor.snapshot.empty()) {
      std::set<std::string> universe(snap.modules.begin(), snap.modules.end());
      std::set<std::string> extra;
      for (const auto& [bug, m] : scores.by_bug) {
        for (const auto& [module, s] : m) {
          if (!universe.contains(module)) extra.insert(module);
        }
      }
      if (!extra.empty()) {
        warnings.push_back(path.string() + ": " + std::to_string(extra.size()) +
                           " scored module(s) not in snapshot (kept)");
      }
    }
    snap.scores[tech] = std::move(scores);
  }
  return snap;
}

std::string_view exclusion_name(Exclusion reason) {
  switch (reason) {
    case Exclusion::kNanScore: return "nan-score";
    case Exclusion::kNoGoldInRanking: return "no-gold-in-ranking";
    case Exclusion::kMissingTechnique: return "missing-technique";
    case Exclusion::kNoSmells: return "no-smells";
    case Exclusion::kFewerThanFiveReports: return "fewer-than-5-reports";
  }
  return "unknown";
}

std::optional<Exclusion> validate_ranking(const ir::ScoreMap* scores, const std::set<std::string>& gold) {
  if (scores == nullptr) return Exclusion::kMissingTechnique;
  bool has_gold = false;
  for (const auto& [module, score] : *scores) {
    if (!std::isfinite(score)) return Exclusion::kNanScore;
    has_gold = has_gold || gold.contains(module);
  }
  if (!has_gold) return Exclusion::kNoGoldInRanking;
  return std::nullopt;
}

std::optional<Exclusion> validate_ranking(const ir::ScoredRanking& ranking, const std::set<std::string>& gold) {
  bool has_gold = false;
  for (const auto& e : ranking.entries) {
    if (!std::isfinite(e.score)) return Exclusion::kNanScore;
    has_gold = has_gold || gold.contains(e.module);
  }
  if (!has_gold) return Exclusion::kNoGoldInRanking;
  return std::nullopt;
}

json ValidationReport::to_json() const {
  json doc = {{"excluded_reports", json::array()}, {"excluded_systems", json::array()}};
  for (const auto& r : reports) {
    doc["excluded_reports"].push_back({{"system", r.system},
                                       {"bug", r.bug_id},
                                       {"reason", std::string(exclusion_name(r.reason))},
                                       {"technique", r.technique}});
  }
  for (const auto& s : systems) {
    doc["excluded_systems"].push_back({{"system", s.system}, {"reason", std::string(exclusion_name(s.reason))}});
  }
  return doc;
}

void ValidationReport::write_text(std::ostream& out) const {
  out << "excluded reports: " << reports.size() << '\n';
  for (const auto& r : reports) {
    out << "  " << r.system << " bug " << r.bug_id << ": " << exclusion_name(r.reason) << " (" << r.technique
        << ")\n";
  }
  out << "excluded systems: " << systems.size() << '\n';
  for (const auto& s : systems) out << "  " << s.system << ": " << exclusion_name(s.reason) << '\n';
}

FilterResult filter_dataset(std::vector<SystemSnapshot> systems, std::span<const std::string> techniques,
                            const FilterOptions& options) {
  FilterResult result;
  for (auto& sys : systems) {
    std::vector<BugReportRecord> kept;
    for (auto& report : sys.reports) {
      std::optional<Exclusion> reason;
      std::string culprit;
      for (const auto& tech : techniques) {
        const ir::ScoreMap* scores = nullptr;
        if (auto t = sys.scores.find(tech); t != sys.scores.end()) {
          if (auto b = t->second.by_bug.find(report.id); b != t->second.by_bug.end()) scores = &b->second;
        }
        reason = validate_ranking(scores, report.gold);
        if (reason) {
          culprit = tech;
          break;
        }
      }
      if (reason) {
        result.report.reports.push_back({sys.label(), report.id, *reason, culprit});
      } else {
        kept.push_back(std::move(report));
      }
    }
    sys.reports = std::move(kept);
  }

  std::vector<SystemSnapshot> smelly;
  for (auto& sys : systems) {
    if (sys.smells.empty()) {
      result.report.systems.push_back({sys.label(), Exclusion::kNoSmells});
    } else {
      smelly.push_back(std::move(sys));
    }
  }
  for (auto& sys : smelly) {
    if (sys.reports.size() < options.min_reports) {
      result.report.systems.push_back({sys.label(), Exclusion::kFewerThanFiveReports});
    } else {
      result.systems.push_back(std::move(sys));
    }
  }
  if (result.systems.empty()) throw Error("dataset empty after filtering");
  return result;
}

}  // namespace sabl::io
