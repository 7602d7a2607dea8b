#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "manifest.hpp"
#include "sabl/corpus.hpp"
#include "sabl/dataio.hpp"
#include "sabl/error.hpp"
#include "sabl/evaluation.hpp"
#include "sabl/gbli.hpp"
#include "sabl/hash.hpp"
#include "sabl/native.hpp"
#include "sabl/parallel.hpp"
#include "sabl/risk.hpp"
#include "sabl/search.hpp"
#include "sabl/text_util.hpp"
#include "sabl/version.hpp"

namespace sabl::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Globals {
  unsigned jobs = 1;
  std::string format = "csv";
  bool seedless = false;
  std::string stopwords;
  bool keep_compounds = false;
  std::vector<std::string> extensions{".java"};
  std::string cache_dir;
};

class Context {
 public:
  Context(Globals globals, RunManifest manifest, std::ostream& out, std::ostream& err)
      : g(std::move(globals)), manifest(std::move(manifest)), out_(out), err_(err) {}

  Globals g;
  RunManifest manifest;

  bool json_output() const { return g.format == "json"; }

  void warn(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) err_ << "warning: " << w << '\n';
  }
  void warn(const std::string& w) { err_ << "warning: " << w << '\n'; }
  void note(const std::string& n) { err_ << n << '\n'; }

  void emit(const std::string& body, const std::string& path) {
    if (path.empty()) {
      out_ << body;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << body;
  }

  /// CSV or text report with the manifest as a leading comment.
  void emit_text(const std::string& body, const std::string& path) { emit(manifest.comment_line() + body, path); }

  void emit_json(json doc, const std::string& path) {
    json wrapped = {{"manifest", manifest.to_json()}};
    for (auto& [k, v] : doc.items()) wrapped[k] = v;
    emit(wrapped.dump(2) + "\n", path);
  }

  corpus::Pipeline pipeline() const {
    corpus::PipelineOptions opts{g.keep_compounds};
    if (g.stopwords.empty()) return corpus::Pipeline(corpus::StopWords::standard(), opts);
    return corpus::Pipeline(corpus::StopWords::load(g.stopwords), opts);
  }

  corpus::CorpusOptions corpus_options() const {
    corpus::CorpusOptions o;
    o.extensions = g.extensions;
    o.jobs = g.jobs;
    return o;
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

std::string f4(double v) { return format_fixed(v, 4); }
double r4(double v) { return std::stod(format_fixed(v, 4)); }

json optional_json(const std::optional<double>& v, double scale = 1.0) {
  if (!v) return nullptr;
  if (std::isinf(*v)) return "inf";
  return r4(*v * scale);
}

// ---------------------------------------------------------------- datasets

struct LoadedDataset {
  std::vector<io::SystemSnapshot> systems;
  io::ValidationReport validation;
};

LoadedDataset load_dataset(Context& ctx, const std::string& manifest, std::span<const std::string> techniques,
                           bool filter) {
  std::vector<io::SystemDescriptor> descriptors = io::load_dataset(manifest);
  ctx.manifest.add_file(manifest);
  corpus::Pipeline pipeline = ctx.pipeline();
  native::NativeOptions nopts;
  nopts.corpus = ctx.corpus_options();
  nopts.corpus.jobs = 1;
  if (!ctx.g.cache_dir.empty()) nopts.cache_dir = ctx.g.cache_dir;

  std::vector<io::SystemSnapshot> systems(descriptors.size());
  parallel_for(descriptors.size(), ctx.g.jobs, [&](std::size_t i) {
    io::LoadOptions lo;
    lo.corpus = nopts.corpus;
    systems[i] = io::load_system(descriptors[i], lo);
    native::attach_native_scores(systems[i], techniques, pipeline, nopts);
  });
  for (const auto& s : systems) {
    ctx.warn(s.warnings);
    const auto& d = s.descriptor;
    if (!d.bug_reports.empty()) ctx.manifest.add_file(d.bug_reports.string());
    ctx.manifest.add_file(d.smells.string());
    for (const auto& [tech, path] : d.scores) ctx.manifest.add_file(path.string());
    if (!d.snapshot.empty()) ctx.manifest.add_hash(s.label() + " snapshot", s.content_hash);
  }
  for (const auto& t : techniques) {
    for (const auto& s : systems) {
      if (!native::is_native(t) && !s.scores.contains(t)) {
        ctx.warn(s.label() + ": no scores for technique " + t);
      }
    }
  }

  LoadedDataset out;
  if (!filter) {
    out.systems = std::move(systems);
    return out;
  }
  try {
    io::FilterResult fr = io::filter_dataset(std::move(systems), techniques);
    out.systems = std::move(fr.systems);
    out.validation = std::move(fr.report);
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  std::size_t kept = 0;
  for (const auto& s : out.systems) kept += s.reports.size();
  ctx.note("kept " + std::to_string(out.systems.size()) + " system(s), " + std::to_string(kept) +
           " report(s); excluded " + std::to_string(out.validation.reports.size()) + " report(s), " +
           std::to_string(out.validation.systems.size()) + " system(s)");
  return out;
}

smell::RiskTable dataset_risk(const std::vector<io::SystemSnapshot>& systems) {
  std::set<std::string> universe, buggy;
  std::map<smell::SmellType, std::set<std::string>> smelly;
  for (const auto& s : systems) {
    const std::string prefix = s.label() + "::";
    std::set<std::string> local(s.modules.begin(), s.modules.end());
    if (local.empty()) {
      for (const auto& [tech, scores] : s.scores) {
        for (const auto& [bug, map] : scores.by_bug) {
          for (const auto& [m, v] : map) local.insert(m);
        }
      }
      for (const auto& m : s.smells.modules()) local.insert(m);
      for (const auto& r : s.reports) local.insert(r.gold.begin(), r.gold.end());
    }
    for (const auto& m : local) universe.insert(prefix + m);
    for (const auto& r : s.reports) {
      for (const auto& g : r.gold) {
        if (local.contains(g)) buggy.insert(prefix + g);
      }
    }
    for (const auto& inst : s.smells.instances()) {
      if (local.contains(inst.module)) smelly[inst.type].insert(prefix + inst.module);
    }
  }
  return smell::relative_risk(universe, buggy, smelly);
}

json type_list(const smell::SmellTypeSet& set) {
  json names = json::array();
  for (auto t : set.types()) names.push_back(std::string(smell::name(t)));
  return names;
}

json selectors_json(const smell::SelectorSet& s) {
  return {{"s1", type_list(s.s1)}, {"s2", type_list(s.s2)}, {"s3", type_list(s.s3)},
          {"s4", type_list(s.s4)}, {"s5", type_list(s.s5)}, {"warnings", s.warnings}};
}

smell::SelectorSet load_selectors(const std::string& path, Context& ctx) {
  std::vector<std::string> warnings;
  json doc = io::parse_json_file(path, warnings);
  ctx.warn(warnings);
  ctx.manifest.add_file(path);
  if (!doc.is_object()) throw InputError(path + ": selectors must be a JSON object");
  smell::SelectorSet out;
  smell::SmellTypeSet* slots[] = {&out.s1, &out.s2, &out.s3, &out.s4, &out.s5};
  for (int level = 1; level <= 5; ++level) {
    const std::string key = "s" + std::to_string(level);
    if (!doc.contains(key)) {
      if (level == 1) {
        out.s1 = smell::SmellTypeSet::all();
        continue;
      }
      throw InputError(path + ": missing selector " + key);
    }
    if (!doc[key].is_array()) throw InputError(path + ": selector " + key + " must be an array of type names");
    for (const auto& n : doc[key]) {
      auto t = n.is_string() ? smell::parse_smell_type(n.get<std::string>()) : std::nullopt;
      if (!t) throw InputError(path + ": unknown smell type " + n.dump() + " in " + key);
      slots[level - 1]->insert(*t);
    }
  }
  return out;
}

smell::SelectorSet selectors_for(Context& ctx, const std::string& path,
                                 const std::vector<io::SystemSnapshot>& systems) {
  if (!path.empty()) return load_selectors(path, ctx);
  smell::SelectorSet s = smell::derive_selectors(dataset_risk(systems));
  ctx.warn(s.warnings);
  return s;
}

// ------------------------------------------------------------------ index

struct IndexArgs {
  std::string snapshot;
  std::string out;
};

int cmd_index(Context& ctx, const IndexArgs& a) {
  if (!fs::is_directory(a.snapshot)) throw InputError("snapshot directory not found: " + a.snapshot);
  native::IndexResult r = native::load_or_build_index(a.snapshot, ctx.pipeline(), ctx.corpus_options(), a.out);
  ctx.warn(r.warnings);
  ctx.manifest.add_hash("snapshot", r.cache_key);
  const std::string status = r.cache_hit ? "up-to-date" : "built";
  if (ctx.json_output()) {
    ctx.emit_json({{"cache", a.out},
                   {"cache_key", to_hex(r.cache_key)},
                   {"documents", r.index.num_documents()},
                   {"terms", r.index.num_terms()},
                   {"status", status}},
                  "");
  } else {
    std::ostringstream body;
    body << "cache,cache_key,documents,terms,status\n"
         << a.out << ',' << to_hex(r.cache_key) << ',' << r.index.num_documents() << ',' << r.index.num_terms()
         << ',' << status << '\n';
    ctx.emit_text(body.str(), "");
  }
  return 0;
}

// ------------------------------------------------------------------- rank

struct RankArgs {
  std::string technique;
  std::string bug;
  bool all = false;
  std::string snapshot;
  std::string bugs;
  std::string index;
  std::string scores;
  std::string out;
};

std::vector<std::string> select_bugs(const RankArgs& a, const std::vector<std::string>& available) {
  if (a.all == !a.bug.empty()) throw InputError("rank needs exactly one of --bug or --all");
  if (a.all) return available;
  if (std::find(available.begin(), available.end(), a.bug) == available.end()) {
    throw InputError("unknown bug id " + a.bug);
  }
  return {a.bug};
}

int cmd_rank(Context& ctx, const RankArgs& a) {
  std::vector<ir::ScoredRanking> rankings;
  if (native::is_native(a.technique)) {
    if (a.snapshot.empty() || a.bugs.empty()) throw InputError("--technique " + a.technique + " needs --snapshot and --bugs");
    std::vector<std::string> warnings;
    std::vector<io::BugReportRecord> reports = io::load_bug_reports(a.bugs, warnings);
    ctx.warn(warnings);
    ctx.manifest.add_file(a.bugs);
    std::vector<std::string> ids;
    for (const auto& r : reports) ids.push_back(r.id);
    std::vector<std::string> chosen = select_bugs(a, ids);
    corpus::Pipeline pipeline = ctx.pipeline();
    native::IndexResult idx = native::load_or_build_index(a.snapshot, pipeline, ctx.corpus_options(), a.index);
    ctx.warn(idx.warnings);
    ctx.manifest.add_hash("snapshot", idx.cache_key);
    std::vector<io::BugReportRecord> selected;
    for (const auto& r : reports) {
      if (std::find(chosen.begin(), chosen.end(), r.id) != chosen.end()) selected.push_back(r);
    }
    io::TechniqueScores scores = native::score_reports(selected, a.technique, idx.index, pipeline);
    for (const auto& r : selected) rankings.push_back(ir::rank(scores.by_bug.at(r.id), r.id, a.technique));
  } else if (a.technique.rfind("external:", 0) == 0 && a.technique.size() > 9) {
    if (a.scores.empty()) throw InputError("--technique " + a.technique + " needs --scores");
    std::vector<std::string> warnings;
    io::TechniqueScores scores = io::load_external_scores(a.scores, a.technique.substr(9), nullptr, warnings);
    ctx.warn(warnings);
    ctx.manifest.add_file(a.scores);
    std::vector<std::string> ids;
    for (const auto& [bug, m] : scores.by_bug) ids.push_back(bug);
    for (const auto& bug : select_bugs(a, ids)) {
      const ir::ScoreMap& m = scores.by_bug.at(bug);
      for (const auto& [module, s] : m) {
        if (!std::isfinite(s)) throw InputError("invalid score for " + module + " in bug " + bug);
      }
      rankings.push_back(ir::rank(m, bug, a.technique));
    }
  } else {
    throw InputError("unknown technique " + a.technique + " (expected vsm, rvsm or external:<name>)");
  }
  std::ostringstream body;
  body << json{{"manifest", ctx.manifest.to_json()}}.dump() << '\n';
  for (const auto& r : rankings) io::write_scores_jsonl(body, r);
  ctx.emit(body.str(), a.out);
  return 0;
}

// ---------------------------------------------------------------- combine

struct CombineArgs {
  std::string scores;
  std::string smell_values;
  std::string dataset;
  std::string technique = "vsm";
  std::string config = "g1,a1,s1";
  std::string selectors;
  std::string system;
  std::vector<std::string> filter_techniques;
  std::optional<double> alpha;
  bool sweep = false;
  std::string metric = "map";
  std::string out;
};

ir::ScoreMap load_value_map(const std::string& path, Context& ctx) {
  std::vector<std::string> warnings;
  json doc = io::parse_json_file(path, warnings);
  ctx.warn(warnings);
  ctx.manifest.add_file(path);
  if (!doc.is_object()) throw InputError(path + ": expected a JSON object of module -> value");
  ir::ScoreMap out;
  for (const auto& [k, v] : doc.items()) {
    if (!v.is_number()) throw InputError(path + ": value of " + k + " must be a number");
    out[normalize_module_path(k)] = v.get<double>();
  }
  return out;
}

int combine_fixture(Context& ctx, const CombineArgs& a) {
  if (a.sweep || !a.alpha) throw InputError("--scores/--smell-values combine needs --alpha");
  if (*a.alpha < 0.0 || *a.alpha > 1.0) throw InputError("--alpha must lie in [0, 1]");
  ir::ScoreMap raw_scores = load_value_map(a.scores, ctx);
  ir::ScoreMap raw_smells = load_value_map(a.smell_values, ctx);
  for (const auto& [m, v] : raw_scores) {
    if (!std::isfinite(v)) throw InputError("invalid score for " + m);
  }
  ir::ScoreMap aligned;
  for (const auto& [m, v] : raw_scores) {
    auto it = raw_smells.find(m);
    aligned[m] = it == raw_smells.end() ? 0.0 : it->second;
  }
  for (const auto& [m, v] : raw_smells) {
    if (!raw_scores.contains(m)) ctx.warn("smell value for unscored module " + m + " ignored");
  }
  ir::ScoreMap n_score = gbli::normalize(gbli::shift_nonnegative(raw_scores));
  ir::ScoreMap n_smell = gbli::normalize(aligned);
  ir::ScoreMap combined = gbli::combine(n_score, n_smell, *a.alpha);
  ir::ScoredRanking ranking = ir::rank(combined);
  if (ctx.json_output()) {
    json rows = json::array();
    std::size_t rank = 1;
    for (const auto& e : ranking.entries) {
      rows.push_back({{"rank", rank++},
                      {"module", e.module},
                      {"n_score", r4(n_score.at(e.module))},
                      {"n_smell", r4(n_smell.at(e.module))},
                      {"gbli", r4(e.score)}});
    }
    ctx.emit_json({{"alpha", *a.alpha}, {"ranking", rows}}, a.out);
  } else {
    std::ostringstream body;
    body << "rank,module,n_score,n_smell,gbli\n";
    std::size_t rank = 1;
    for (const auto& e : ranking.entries) {
      body << rank++ << ',' << e.module << ',' << f4(n_score.at(e.module)) << ',' << f4(n_smell.at(e.module)) << ','
           << f4(e.score) << '\n';
    }
    ctx.emit_text(body.str(), a.out);
  }
  return 0;
}

int combine_dataset(Context& ctx, const CombineArgs& a) {
  std::vector<std::string> techniques = a.filter_techniques;
  if (std::find(techniques.begin(), techniques.end(), a.technique) == techniques.end()) {
    techniques.insert(techniques.begin(), a.technique);
  }
  LoadedDataset data = load_dataset(ctx, a.dataset, techniques, true);
  if (!a.system.empty()) {
    std::erase_if(data.systems, [&](const io::SystemSnapshot& s) { return s.label() != a.system; });
    if (data.systems.empty()) throw InputError("unknown or excluded system " + a.system);
  }
  smell::SelectorSet selectors = selectors_for(ctx, a.selectors, data.systems);
  gbli::ConfigEntry entry = gbli::parse_config(a.config, selectors);

  std::vector<gbli::PreparedSystem> prepared;
  for (const auto& s : data.systems) prepared.push_back(gbli::PreparedSystem::prepare(s, s.scores.at(a.technique)));

  if (a.alpha) {
    if (a.sweep) throw InputError("--alpha and --sweep are exclusive");
    if (*a.alpha < 0.0 || *a.alpha > 1.0) throw InputError("--alpha must lie in [0, 1]");
    const std::string name = "gbli:" + a.technique + ":" + entry.label() + ":" + format_fixed(*a.alpha, 2);
    std::ostringstream body;
    body << json{{"manifest", ctx.manifest.to_json()}}.dump() << '\n';
    for (const auto& p : prepared) {
      std::vector<double> n_smell = p.n_smell(entry.config);
      for (std::size_t r = 0; r < p.reports().size(); ++r) {
        io::write_scores_jsonl(body, gbli::rank_report(p, r, n_smell, *a.alpha, name));
      }
    }
    ctx.emit(body.str(), a.out);
    return 0;
  }
  if (!a.sweep) throw InputError("combine needs --alpha or --sweep");
  auto metric = gbli::parse_metric(a.metric);
  if (!metric) throw InputError("unknown metric " + a.metric);

  std::vector<gbli::SweepTable> tables(prepared.size());
  parallel_for(prepared.size(), ctx.g.jobs, [&](std::size_t i) {
    tables[i] = gbli::sweep(prepared[i], prepared[i].n_smell(entry.config));
  });
  gbli::SweepTable pooled;
  for (const auto& t : tables) {
    for (std::size_t k = 0; k < gbli::kGridSize; ++k) pooled.points[k] += t.points[k];
  }
  gbli::AlphaSweepResult summary = gbli::summarize_sweep(pooled, *metric, entry.label());

  json per_system = json::array();
  for (std::size_t i = 0; i < tables.size(); ++i) {
    gbli::AlphaSweepResult r = gbli::summarize_sweep(tables[i], *metric, entry.label());
    per_system.push_back({{"system", prepared[i].label()},
                          {"best_alpha", std::stod(format_fixed(r.chosen_alpha(), 2))},
                          {"best_value", r4(r.best_value)},
                          {"maximizers", r.best.size()},
                          {"shape", std::string(gbli::curve_shape_name(gbli::classify_curve(r)))}});
  }
  const std::string shape(gbli::curve_shape_name(gbli::classify_curve(summary)));
  if (ctx.json_output()) {
    json rows = json::array();
    for (std::size_t k = 0; k < gbli::kGridSize; ++k) {
      json row = {{"alpha", std::stod(format_fixed(gbli::alpha_at(k), 2))}};
      for (auto m : gbli::kAllMetrics) row[std::string(gbli::metric_name(m))] = r4(pooled.points[k].mean(m));
      rows.push_back(std::move(row));
    }
    ctx.emit_json({{"config", entry.label()},
                   {"metric", std::string(gbli::metric_name(*metric))},
                   {"best_alpha", std::stod(format_fixed(summary.chosen_alpha(), 2))},
                   {"best_value", r4(summary.best_value)},
                   {"maximizers", summary.best.size()},
                   {"shape", shape},
                   {"sweep", rows},
                   {"systems", per_system}},
                  a.out);
  } else {
    std::ostringstream body;
    body << "# config " << entry.label() << " metric " << gbli::metric_name(*metric) << " best_alpha "
         << format_fixed(summary.chosen_alpha(), 2) << " maximizers " << summary.best.size() << " shape " << shape
         << '\n';
    for (const auto& s : per_system) {
      body << "# system " << s["system"].get<std::string>() << " best_alpha "
           << format_fixed(s["best_alpha"].get<double>(), 2) << " shape " << s["shape"].get<std::string>() << '\n';
    }
    body << "alpha,top1,top5,top10,mrr,map\n";
    for (std::size_t k = 0; k < gbli::kGridSize; ++k) {
      body << format_fixed(gbli::alpha_at(k), 2);
      for (auto m : gbli::kAllMetrics) body << ',' << f4(pooled.points[k].mean(m));
      body << '\n';
    }
    ctx.emit_text(body.str(), a.out);
  }
  return 0;
}

int cmd_combine(Context& ctx, const CombineArgs& a) {
  const bool fixture = !a.scores.empty() || !a.smell_values.empty();
  if (fixture == !a.dataset.empty()) {
    throw InputError("combine needs either --scores with --smell-values, or --dataset");
  }
  if (fixture) {
    if (a.scores.empty() || a.smell_values.empty()) throw InputError("--scores and --smell-values go together");
    return combine_fixture(ctx, a);
  }
  return combine_dataset(ctx, a);
}

// --------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string rankings;
  std::string gold;
  std::string compare;
  std::string out;
};

std::map<std::string, eval::RankingOutcome> outcomes_from(Context& ctx, const std::string& path,
                                                          const std::vector<io::BugReportRecord>& gold) {
  std::vector<std::string> warnings;
  io::TechniqueScores scores = io::load_external_scores(path, "rankings", nullptr, warnings);
  ctx.warn(warnings);
  ctx.manifest.add_file(path);
  std::map<std::string, eval::RankingOutcome> out;
  for (const auto& r : gold) {
    auto it = scores.by_bug.find(r.id);
    if (it == scores.by_bug.end()) {
      ctx.warn(path + ": no ranking for bug " + r.id + "; skipped");
      continue;
    }
    for (const auto& [m, s] : it->second) {
      if (!std::isfinite(s)) throw InputError(path + ": invalid score for " + m + " in bug " + r.id);
    }
    ir::ScoredRanking ranking = ir::rank(it->second, r.id);
    std::vector<std::string> ordered;
    ordered.reserve(ranking.entries.size());
    for (const auto& e : ranking.entries) ordered.push_back(e.module);
    out.emplace(r.id, eval::evaluate_ranking(r.id, ordered, r.gold));
  }
  return out;
}

int cmd_evaluate(Context& ctx, const EvaluateArgs& a) {
  std::vector<std::string> warnings;
  std::vector<io::BugReportRecord> gold = io::load_bug_reports(a.gold, warnings);
  ctx.warn(warnings);
  ctx.manifest.add_file(a.gold);
  auto treated = outcomes_from(ctx, a.rankings, gold);
  std::map<std::string, eval::RankingOutcome> baseline;
  if (!a.compare.empty()) {
    baseline = outcomes_from(ctx, a.compare, gold);
    std::erase_if(treated, [&](const auto& kv) { return !baseline.contains(kv.first); });
    std::erase_if(baseline, [&](const auto& kv) { return !treated.contains(kv.first); });
  }
  if (treated.empty()) throw InputError("no bug reports to evaluate");

  auto per_report = [](const std::map<std::string, eval::RankingOutcome>& outcomes) {
    std::vector<eval::RankingOutcome> v;
    for (const auto& [id, o] : outcomes) v.push_back(o);
    return eval::summarize(std::move(v));
  };
  eval::MetricReport report = per_report(treated);
  std::optional<eval::MetricReport> base;
  if (!a.compare.empty()) base = per_report(baseline);

  struct Row {
    std::string metric;
    double value;
    std::vector<double> samples;
  };
  auto rows_of = [](const eval::MetricReport& r) {
    std::vector<Row> rows;
    for (std::size_t n : {1, 5, 10}) {
      std::vector<double> hits;
      for (const auto& o : r.per_report) hits.push_back(o.hit_within(n) ? 1.0 : 0.0);
      rows.push_back({"top" + std::to_string(n), r.top_n.at(n), hits});
    }
    rows.push_back({"mrr", r.mrr, r.per_report_rr});
    rows.push_back({"map", r.map, r.per_report_ap});
    return rows;
  };
  std::vector<Row> rows = rows_of(report);
  std::vector<Row> base_rows;
  if (base) base_rows = rows_of(*base);

  json jrows = json::array();
  std::ostringstream csv;
  csv << (base ? "metric,value,baseline,difference,w_plus,z,p_value,cliffs_delta,magnitude,note\n"
               : "metric,value\n");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    json jr = {{"metric", r.metric}, {"value", r4(r.value)}};
    csv << r.metric << ',' << f4(r.value);
    if (base) {
      const Row& b = base_rows[i];
      eval::CliffsDelta cd = eval::cliffs_delta(r.samples, b.samples);
      jr["baseline"] = r4(b.value);
      jr["difference"] = r4(r.value - b.value);
      jr["cliffs_delta"] = r4(cd.d);
      jr["magnitude"] = std::string(eval::magnitude_name(cd.magnitude));
      csv << ',' << f4(b.value) << ',' << f4(r.value - b.value) << ',';
      try {
        eval::WilcoxonResult w = eval::wilcoxon_signed_rank(r.samples, b.samples);
        jr["wilcoxon"] = {{"w_plus", r4(w.statistic)}, {"z", r4(w.z)}, {"p_value", r4(w.p_value)}, {"pairs", w.pairs}};
        csv << f4(w.statistic) << ',' << f4(w.z) << ',' << f4(w.p_value) << ',';
        jr["note"] = "";
        csv << f4(cd.d) << ',' << eval::magnitude_name(cd.magnitude) << ",\n";
      } catch (const Error& e) {
        const std::string note = std::string("no difference (") + e.what() + ")";
        jr["wilcoxon"] = nullptr;
        jr["note"] = note;
        csv << "NA,NA,NA," << f4(cd.d) << ',' << eval::magnitude_name(cd.magnitude) << ',' << note << '\n';
      }
    } else {
      csv << '\n';
    }
    jrows.push_back(std::move(jr));
  }
  if (ctx.json_output()) {
    ctx.emit_json({{"reports", report.reports}, {"metrics", jrows}}, a.out);
  } else {
    ctx.emit_text("# reports " + std::to_string(report.reports) + "\n" + csv.str(), a.out);
  }
  return 0;
}

// ------------------------------------------------------------------- risk

struct RiskArgs {
  std::string dataset;
  std::string counts;
  std::vector<std::string> filter_techniques;
  std::string selectors_out;
  std::string out;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& f : out) {
    auto b = f.find_first_not_of(" \t\r");
    auto e = f.find_last_not_of(" \t\r");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

std::uint64_t parse_count(const std::string& field, const std::string& ctx) {
  std::string digits;
  for (char c : field) {
    if (c != ',' && c != '_') digits += c;
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError(ctx + ": invalid count \"" + field + "\"");
  }
  return std::stoull(digits);
}

smell::RiskTable risk_from_counts_file(Context& ctx, const std::string& path) {
  std::vector<std::string> warnings;
  SanitizedText text = sanitize_utf8(read_file(path));
  ctx.manifest.add_file(path);
  std::istringstream in(text.text);
  std::string line;
  std::size_t line_no = 0;
  std::map<smell::SmellType, smell::RiskCounts> per_type;
  std::optional<smell::RiskCounts> total, all;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string ctx_line = path + ":" + std::to_string(line_no);
    auto f = split_csv_line(line);
    if (header) {
      header = false;
      if (f.size() < 3 || f[0] != "type") throw InputError(ctx_line + ": expected header type,modules,buggy");
      continue;
    }
    if (f.size() < 3) throw InputError(ctx_line + ": expected type,modules,buggy");
    smell::RiskCounts c{parse_count(f[1], ctx_line), parse_count(f[2], ctx_line)};
    std::string key = f[0];
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (key == "total") {
      total = c;
    } else if (key == "all" || key == "all code files") {
      all = c;
    } else if (auto t = smell::parse_smell_type(f[0])) {
      if (!per_type.emplace(*t, c).second) throw InputError(ctx_line + ": duplicate row for " + f[0]);
    } else {
      throw InputError(ctx_line + ": unknown smell type \"" + f[0] + "\"");
    }
  }
  if (!total || !all) throw InputError(path + ": needs a Total row and an All code files row");
  return smell::risk_from_counts(per_type, *total, all->modules, all->buggy);
}

json risk_row_json(const smell::RiskRow& r) {
  return {{"type", r.label},
          {"modules", r.counts.modules},
          {"buggy", r.counts.buggy},
          {"risk_pct", optional_json(r.risk, 100.0)},
          {"risk_complement_pct", optional_json(r.risk_complement, 100.0)},
          {"rr", optional_json(r.relative_risk)}};
}

int cmd_risk(Context& ctx, const RiskArgs& a) {
  if (a.dataset.empty() == a.counts.empty()) throw InputError("risk needs exactly one of --dataset or --counts");
  smell::RiskTable table;
  if (!a.counts.empty()) {
    table = risk_from_counts_file(ctx, a.counts);
  } else {
    LoadedDataset data = load_dataset(ctx, a.dataset, a.filter_techniques, !a.filter_techniques.empty());
    table = dataset_risk(data.systems);
  }
  if (table.rows.empty()) throw InputError("no smell types present");
  smell::SelectorSet selectors = smell::derive_selectors(table);
  ctx.warn(selectors.warnings);
  if (!a.selectors_out.empty()) ctx.emit_json(selectors_json(selectors), a.selectors_out);
  if (ctx.json_output()) {
    json rows = json::array();
    for (const auto& r : table.rows) rows.push_back(risk_row_json(r));
    ctx.emit_json({{"rows", rows},
                   {"total", risk_row_json(table.total)},
                   {"all_modules", table.all_modules},
                   {"all_buggy", table.all_buggy},
                   {"universe_risk_pct", r4(table.universe_risk() * 100.0)},
                   {"selectors", selectors_json(selectors)}},
                  a.out);
  } else {
    std::ostringstream body;
    smell::write_risk_csv(body, table);
    ctx.emit_text(body.str(), a.out);
  }
  return 0;
}

// ---------------------------------------------------------- config-search

struct SearchArgs {
  std::string dataset;
  std::string technique = "vsm";
  std::vector<std::string> filter_techniques;
  std::string selectors;
  bool include_single_type = false;
  std::string metrics = "all";
  std::string curves_out;
  std::string validation_out;
  std::string out;
};

int cmd_config_search(Context& ctx, const SearchArgs& a) {
  if (a.metrics != "all") throw InputError("--metrics supports only \"all\"");
  std::vector<std::string> techniques = a.filter_techniques;
  if (std::find(techniques.begin(), techniques.end(), a.technique) == techniques.end()) {
    techniques.insert(techniques.begin(), a.technique);
  }
  LoadedDataset data = load_dataset(ctx, a.dataset, techniques, true);
  if (!a.validation_out.empty()) ctx.emit_json(data.validation.to_json(), a.validation_out);
  smell::SelectorSet selectors = selectors_for(ctx, a.selectors, data.systems);
  std::vector<gbli::PreparedSystem> prepared;
  for (const auto& s : data.systems) prepared.push_back(gbli::PreparedSystem::prepare(s, s.scores.at(a.technique)));
  std::vector<gbli::ConfigEntry> configs = gbli::enumerate_configs(selectors, a.include_single_type);
  gbli::SearchOptions opts;
  opts.jobs = ctx.g.jobs;
  opts.keep_curves = !a.curves_out.empty();
  gbli::ConfigSearchReport report = gbli::config_search(prepared, configs, opts);
  if (!a.curves_out.empty()) ctx.emit_json(gbli::curves_to_json(report, configs), a.curves_out);
  if (ctx.json_output()) {
    json doc = gbli::search_to_json(report);
    doc["technique"] = a.technique;
    doc["selectors"] = selectors_json(selectors);
    doc["protocol"] = "in-sample alpha optimization per system and metric (upper bound)";
    ctx.emit_json(std::move(doc), a.out);
  } else {
    std::ostringstream body;
    body << "# technique " << a.technique << "; alpha optimized in-sample per system and metric (upper bound)\n";
    gbli::write_search_csv(body, report);
    ctx.emit_text(body.str(), a.out);
  }
  return 0;
}

// --------------------------------------------------------------- validate

struct ValidateArgs {
  std::string dataset;
  std::vector<std::string> techniques;
  std::string out;
};

int cmd_validate(Context& ctx, const ValidateArgs& a) {
  LoadedDataset data = load_dataset(ctx, a.dataset, a.techniques, true);
  if (ctx.json_output()) {
    ctx.emit_json(data.validation.to_json(), a.out);
  } else {
    std::ostringstream body;
    data.validation.write_text(body);
    ctx.emit_text(body.str(), a.out);
  }
  return 0;
}

// -------------------------------------------------------- convert-bench4bl

struct ConvertArgs {
  std::string xml;
  std::string prefix;
  std::string out;
};

int cmd_convert(Context& ctx, const ConvertArgs& a) {
  std::vector<std::string> warnings;
  auto reports = io::convert_bench4bl_bugs(a.xml, {a.prefix}, warnings);
  ctx.warn(warnings);
  ctx.manifest.add_file(a.xml);
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back({{"id", r.id}, {"summary", r.summary}, {"description", r.description}, {"gold", r.gold}});
  }
  ctx.emit_json({{"reports", arr}}, a.out);
  ctx.note("converted " + std::to_string(reports.size()) + " bug report(s)");
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smell-aware re-ranking of IR-based bug localization results", "sabl"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  Globals g;
  app.add_option("--jobs", g.jobs, "Worker threads; 0 uses every core")->capture_default_str();
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_flag("--seedless", g.seedless, "Fail unless the build is free of random number generation");
  app.add_option("--stopwords", g.stopwords, "Stopword list replacing the built-in one")->check(CLI::ExistingFile);
  app.add_flag("--keep-compounds", g.keep_compounds, "Keep unsplit identifiers next to their parts");
  app.add_option("--extensions", g.extensions, "Source file extensions")->capture_default_str();
  app.add_option("--cache-dir", g.cache_dir, "Directory for per-system index caches");
  CLI::Option* config_opt = app.set_config("--run-config", "", "TOML run configuration; flags override it");

  IndexArgs index_args;
  auto* index = app.add_subcommand("index", "Build and store the TF-IDF index of a source snapshot");
  index->add_option("--snapshot", index_args.snapshot, "Source directory")->required();
  index->add_option("--out", index_args.out, "Index cache file")->required();

  RankArgs rank_args;
  auto* rank = app.add_subcommand("rank", "Emit technique rankings as JSON lines");
  rank->add_option("--technique", rank_args.technique, "vsm, rvsm or external:<name>")->required();
  rank->add_option("--bug", rank_args.bug, "Single bug id");
  rank->add_flag("--all", rank_args.all, "Every bug report");
  rank->add_option("--snapshot", rank_args.snapshot, "Source directory (native techniques)");
  rank->add_option("--bugs", rank_args.bugs, "Bug report JSON (native techniques)");
  rank->add_option("--index", rank_args.index, "Index cache file to reuse or create");
  rank->add_option("--scores", rank_args.scores, "External score file (external techniques)");
  rank->add_option("--out", rank_args.out, "Output file; stdout when absent");

  CombineArgs combine_args;
  auto* combine = app.add_subcommand("combine", "gBLI re-ranking and alpha sweeps");
  combine->add_option("--scores", combine_args.scores, "JSON object module -> raw technique score");
  combine->add_option("--smell-values", combine_args.smell_values, "JSON object module -> raw smell value");
  combine->add_option("--dataset", combine_args.dataset, "Dataset manifest");
  combine->add_option("--technique", combine_args.technique, "Technique to re-rank")->capture_default_str();
  combine->add_option("--config", combine_args.config, "g,a,s configuration")->capture_default_str();
  combine->add_option("--selectors", combine_args.selectors, "Selector JSON; derived from the dataset by default");
  combine->add_option("--system", combine_args.system, "Restrict to one system (\"project version\")");
  combine->add_option("--filter-techniques", combine_args.filter_techniques,
                      "Techniques whose invalid rankings exclude a report");
  double alpha_value = 0.0;
  CLI::Option* alpha_opt = combine->add_option("--alpha", alpha_value, "Fixed alpha in [0, 1]");
  combine->add_flag("--sweep", combine_args.sweep, "Evaluate the 101-point alpha grid");
  combine->add_option("--metric", combine_args.metric, "Metric to maximize in a sweep")->capture_default_str();
  combine->add_option("--out", combine_args.out, "Output file; stdout when absent");

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Ranking metrics and paired comparison");
  evaluate->add_option("--rankings", eval_args.rankings, "Score JSON lines to evaluate")->required();
  evaluate->add_option("--gold", eval_args.gold, "Bug reports with gold sets")->required();
  evaluate->add_option("--compare", eval_args.compare, "Baseline score JSON lines");
  evaluate->add_option("--out", eval_args.out, "Output file; stdout when absent");

  RiskArgs risk_args;
  auto* risk = app.add_subcommand("risk", "Relative risk per smell type and derived selectors");
  risk->add_option("--dataset", risk_args.dataset, "Dataset manifest");
  risk->add_option("--counts", risk_args.counts, "CSV type,modules,buggy with Total and All code files rows");
  risk->add_option("--filter-techniques", risk_args.filter_techniques, "Filter the dataset with these techniques");
  risk->add_option("--selectors-out", risk_args.selectors_out, "Write selectors s1..s5 as JSON");
  risk->add_option("--out", risk_args.out, "Output file; stdout when absent");

  SearchArgs search_args;
  auto* search = app.add_subcommand("config-search", "Evaluate every smell configuration with per-system alpha");
  search->add_option("--dataset", search_args.dataset, "Dataset manifest")->required();
  search->add_option("--technique", search_args.technique, "Technique to re-rank")->capture_default_str();
  search->add_option("--filter-techniques", search_args.filter_techniques,
                     "Techniques whose invalid rankings exclude a report");
  search->add_option("--selectors", search_args.selectors, "Selector JSON; derived from the dataset by default");
  search->add_flag("--include-single-type", search_args.include_single_type, "Add the 68 single-type configurations");
  search->add_option("--metrics", search_args.metrics, "Metrics to optimize")->capture_default_str();
  search->add_option("--curves-out", search_args.curves_out, "Write every alpha curve as JSON");
  search->add_option("--validation-out", search_args.validation_out, "Write the validation report as JSON");
  search->add_option("--out", search_args.out, "Output file; stdout when absent");

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Apply the dataset filters and report exclusions");
  validate->add_option("--dataset", validate_args.dataset, "Dataset manifest")->required();
  validate->add_option("--techniques", validate_args.techniques, "Techniques to validate")->required();
  validate->add_option("--out", validate_args.out, "Output file; stdout when absent");

  ConvertArgs convert_args;
  auto* convert = app.add_subcommand("convert-bench4bl", "Convert a Bench4BL bug repository XML file");
  convert->add_option("--xml", convert_args.xml, "Bug repository XML")->required();
  convert->add_option("--prefix", convert_args.prefix, "Prefix for converted gold paths");
  convert->add_option("--out", convert_args.out, "Output file; stdout when absent");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (alpha_opt->count() > 0) combine_args.alpha = alpha_value;

  try {
    if (g.seedless && kUsesRandomness) throw Error("--seedless: this build uses random number generation");
    std::string run_config = config_opt->count() > 0 ? config_opt->as<std::string>() : std::string();
    Context ctx(g, make_manifest(args, run_config), out, err);
    ctx.manifest.random_free = !kUsesRandomness;
    if (index->parsed()) return cmd_index(ctx, index_args);
    if (rank->parsed()) return cmd_rank(ctx, rank_args);
    if (combine->parsed()) return cmd_combine(ctx, combine_args);
    if (evaluate->parsed()) return cmd_evaluate(ctx, eval_args);
    if (risk->parsed()) return cmd_risk(ctx, risk_args);
    if (search->parsed()) return cmd_config_search(ctx, search_args);
    if (validate->parsed()) return cmd_validate(ctx, validate_args);
    if (convert->parsed()) return cmd_convert(ctx, convert_args);
    err << "error: no command\n";
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace sabl::cli
