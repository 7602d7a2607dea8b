#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "sabl/dataio.hpp"
#include "sabl/error.hpp"
#include "temp_dir.hpp"

using namespace sabl;
using namespace sabl::io;
using sabl::test::TempDir;

namespace {

// Two source files, one report, one smell.
fs::path write_minimal(const TempDir& dir) {
  dir.write("src/a/Foo.java", "class Foo { void open() {} }\n");
  dir.write("src/a/Bar.java", "class Bar {}\n");
  dir.write("bugs.json", R"([{"id": 1, "summary": "open fails", "description": "", "gold": ["a/Foo.java"]}])");
  dir.write("smells.json", R"([{"type": "God Class", "module": "a/Foo.java", "severity": 4}])");
  return dir.write("dataset.json", R"({"project": "demo", "version": "1.0", "snapshot": "src",
                                       "bug_reports": "bugs.json", "smells": "smells.json"})");
}

std::string expect_input_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no InputError";
  return {};
}

SystemSnapshot synthetic(const std::string& name, std::size_t reports, bool smells) {
  SystemSnapshot s;
  s.descriptor.project = name;
  s.descriptor.version = "1";
  s.modules = {"A.java", "B.java"};
  for (std::size_t i = 0; i < reports; ++i) s.reports.push_back({"B" + std::to_string(i), "", "", {"A.java"}});
  if (smells) s.smells = smell::SmellReport({{smell::SmellType::kGodClass, "A.java", std::nullopt, 2}});
  return s;
}

void add_scores(SystemSnapshot& s, const std::string& tech, const std::map<std::string, ir::ScoreMap>& by_bug) {
  s.scores[tech] = TechniqueScores{tech, by_bug};
}

std::map<std::string, ir::ScoreMap> valid_scores(const SystemSnapshot& s) {
  std::map<std::string, ir::ScoreMap> m;
  for (const auto& r : s.reports) m[r.id] = {{"A.java", 0.3}, {"B.java", 0.5}};
  return m;
}

}  // namespace

TEST(LoadSystem, MinimalFixtureHasNoWarnings) {
  TempDir dir;
  auto descs = load_dataset(write_minimal(dir));
  ASSERT_EQ(descs.size(), 1u);
  EXPECT_EQ(descs[0].label(), "demo 1.0");
  SystemSnapshot s = load_system(descs[0]);
  EXPECT_TRUE(s.warnings.empty());
  EXPECT_EQ(s.modules, (std::vector<std::string>{"a/Bar.java", "a/Foo.java"}));
  ASSERT_EQ(s.reports.size(), 1u);
  EXPECT_EQ(s.reports[0].id, "1");
  EXPECT_EQ(s.smells.instances().size(), 1u);
  EXPECT_NE(s.find_report("1"), nullptr);
  EXPECT_EQ(s.find_report("2"), nullptr);
}

TEST(LoadSystem, GoldOutsideSnapshotWarnsAndKeepsGold) {
  TempDir dir;
  write_minimal(dir);
  dir.write("bugs.json", R"([{"id": "X", "gold": ["a/Gone.java"]}])");
  SystemSnapshot s = load_system(load_dataset(dir.path() / "dataset.json")[0]);
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_NE(s.warnings[0].find("a/Gone.java"), std::string::npos);
  EXPECT_TRUE(s.reports[0].gold.contains("a/Gone.java"));
}

TEST(LoadSystem, SeverityOutOfRangeCitesInstance) {
  TempDir dir;
  write_minimal(dir);
  dir.write("smells.json", R"([{"type": "God Class", "module": "a/Foo.java", "severity": 2},
                               {"type": "Data Class", "module": "a/Bar.java", "severity": 11}])");
  std::string msg = expect_input_error([&] { load_system(load_dataset(dir.path() / "dataset.json")[0]); });
  EXPECT_NE(msg.find("smells.json"), std::string::npos);
  EXPECT_NE(msg.find("[1]"), std::string::npos);
  EXPECT_NE(msg.find("11"), std::string::npos);
}

TEST(LoadSystem, MalformedJsonCitesLine) {
  TempDir dir;
  write_minimal(dir);
  dir.write("bugs.json", "[\n  {\"id\": 1,\n   \"gold\": [\"a/Foo.java\"]\n  },,\n]\n");
  std::string msg = expect_input_error([&] { load_system(load_dataset(dir.path() / "dataset.json")[0]); });
  EXPECT_NE(msg.find("bugs.json:4"), std::string::npos) << msg;
}

TEST(BugReports, Validation) {
  auto parse = [](const char* text) { return parse_bug_reports(nlohmann::json::parse(text), "x"); };
  const char* empty_gold = R"([{"id": 1, "gold": []}])";
  const char* duplicate = R"([{"id": 1, "gold": ["a"]}, {"id": "1", "gold": ["b"]}])";
  const char* no_id = R"([{"gold": ["a"]}])";
  const char* wrapped = R"({"reports": [{"id": "B-7", "gold": ["./x\\Y.java"]}]})";
  EXPECT_THROW(parse(empty_gold), InputError);
  EXPECT_THROW(parse(duplicate), InputError);
  EXPECT_THROW(parse(no_id), InputError);
  auto r = parse(wrapped);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(*r[0].gold.begin(), "x/Y.java");
}

TEST(BugReports, RoundTrip) {
  std::vector<BugReportRecord> in{{"7", "sum", "desc", {"a/B.java", "c/D.java"}}};
  std::ostringstream os;
  write_bug_reports(os, in);
  auto out = parse_bug_reports(nlohmann::json::parse(os.str()), "x");
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].id, "7");
  EXPECT_EQ(out[0].summary, "sum");
  EXPECT_EQ(out[0].gold, in[0].gold);
}

TEST(SmellReport, Validation) {
  auto parse = [](const char* text) { return parse_smell_report(nlohmann::json::parse(text), "s"); };
  const char* method_missing = R"([{"type": "Feature Envy", "module": "A", "severity": 3}])";
  const char* class_with_method = R"j([{"type": "God Class", "module": "A", "method": "m()", "severity": 3}])j";
  const char* unknown_type = R"([{"type": "Bad Smell", "module": "A", "severity": 3}])";
  const char* zero = R"([{"type": "God Class", "module": "A", "severity": 0}])";
  const char* fractional = R"([{"type": "God Class", "module": "A", "severity": 2.5}])";
  const char* ok = R"j({"smells": [{"type": "featureenvy", "module": "A", "method": "m()", "severity": 10}]})j";
  EXPECT_THROW(parse(method_missing), InputError);
  EXPECT_THROW(parse(class_with_method), InputError);
  EXPECT_THROW(parse(unknown_type), InputError);
  EXPECT_THROW(parse(zero), InputError);
  EXPECT_THROW(parse(fractional), InputError);
  EXPECT_EQ(parse(ok).instances().size(), 1u);
}

TEST(ExternalScores, ParsesLiteralsAndManifest) {
  TempDir dir;
  auto p = dir.write("s.jsonl",
                     "{\"manifest\": {\"command\": \"rank\"}}\n"
                     "{\"bug\": \"1\", \"module\": \"A.java\", \"score\": 0.5}\n"
                     "{\"bug\": 1, \"module\": \"B.java\", \"score\": \"NaN\"}\n"
                     "\n"
                     "{\"bug\": \"2\", \"module\": \"A.java\", \"score\": \"inf\"}\n");
  std::vector<std::string> warnings;
  std::set<std::string> known{"1", "2"};
  TechniqueScores t = load_external_scores(p, "ext", &known, warnings);
  EXPECT_TRUE(warnings.empty());
  ASSERT_EQ(t.by_bug.size(), 2u);
  EXPECT_EQ(t.by_bug["1"]["A.java"], 0.5);
  EXPECT_TRUE(std::isnan(t.by_bug["1"]["B.java"]));
  EXPECT_TRUE(std::isinf(t.by_bug["2"]["A.java"]));
  EXPECT_EQ(validate_ranking(&t.by_bug["1"], {"A.java"}), Exclusion::kNanScore);
}

TEST(ExternalScores, DuplicateIsErrorUnknownBugWarns) {
  TempDir dir;
  auto dup = dir.write("d.jsonl",
                       "{\"bug\": \"1\", \"module\": \"A.java\", \"score\": 0.5}\n"
                       "{\"bug\": \"1\", \"module\": \"A.java\", \"score\": 0.7}\n");
  std::vector<std::string> warnings;
  std::string msg = expect_input_error([&] { load_external_scores(dup, "ext", nullptr, warnings); });
  EXPECT_NE(msg.find("d.jsonl:2"), std::string::npos);

  auto unk = dir.write("u.jsonl", "{\"bug\": \"9\", \"module\": \"A.java\", \"score\": 0.5}\n");
  std::set<std::string> known{"1"};
  TechniqueScores t = load_external_scores(unk, "ext", &known, warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("9"), std::string::npos);
  EXPECT_EQ(t.by_bug.count("9"), 1u);
}

TEST(ExternalScores, ModulesOutsideSnapshotKeptAndLogged) {
  TempDir dir;
  write_minimal(dir);
  dir.write("ext.jsonl", "{\"bug\": \"1\", \"module\": \"gen/Other.java\", \"score\": 1.0}\n"
                         "{\"bug\": \"1\", \"module\": \"a/Foo.java\", \"score\": 0.5}\n");
  dir.write("dataset.json", R"({"project": "demo", "version": "1.0", "snapshot": "src",
                                "bug_reports": "bugs.json", "smells": "smells.json",
                                "scores": {"ext": "ext.jsonl"}})");
  SystemSnapshot s = load_system(load_dataset(dir.path() / "dataset.json")[0]);
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_EQ(s.scores.at("ext").by_bug.at("1").count("gen/Other.java"), 1u);
}

TEST(ExternalScores, WriterRoundTrip) {
  TempDir dir;
  ir::ScoredRanking r{"5", "t", {{"A.java", 1.0}, {"B.java", std::nan("")}}};
  std::ostringstream os;
  write_scores_jsonl(os, r);
  auto p = dir.write("w.jsonl", os.str());
  std::vector<std::string> w;
  TechniqueScores t = load_external_scores(p, "t", nullptr, w);
  EXPECT_EQ(t.by_bug["5"]["A.java"], 1.0);
  EXPECT_TRUE(std::isnan(t.by_bug["5"]["B.java"]));
}

TEST(Dataset, DuplicateVersionRejected) {
  TempDir dir;
  auto p = dir.write("d.json", R"({"systems": [
    {"project": "p", "version": "1", "bug_reports": [], "smells": "s.json"},
    {"project": "p", "version": "1", "bug_reports": [], "smells": "s.json"}]})");
  EXPECT_THROW(load_dataset(p), InputError);
}

TEST(ValidateRanking, Cases) {
  ir::ScoreMap nan_map{{"A", 0.1}, {"B", std::nan("")}};
  EXPECT_EQ(validate_ranking(&nan_map, {"A"}), Exclusion::kNanScore);
  ir::ScoreMap no_gold{{"A", 0.1}, {"B", 0.2}};
  EXPECT_EQ(validate_ranking(&no_gold, {"C"}), Exclusion::kNoGoldInRanking);
  EXPECT_EQ(validate_ranking(nullptr, {"C"}), Exclusion::kMissingTechnique);

  ir::ScoreMap big;
  for (int i = 0; i < 600; ++i) big["M" + std::to_string(1000 + i)] = 1.0 - i / 1000.0;
  ir::ScoredRanking r = ir::rank(big);
  EXPECT_EQ(r.entries[499].module, "M1499");
  EXPECT_EQ(validate_ranking(r, {"M1499"}), std::nullopt);
  EXPECT_EQ(validate_ranking(&big, {"M1499"}), std::nullopt);
  EXPECT_EQ(exclusion_name(Exclusion::kFewerThanFiveReports), "fewer-than-5-reports");
}

TEST(Filter, SmallSystemsAndNoSmells) {
  std::vector<SystemSnapshot> in;
  in.push_back(synthetic("four", 4, true));
  in.push_back(synthetic("quiet", 9, false));
  in.push_back(synthetic("ok", 5, true));
  for (auto& s : in) add_scores(s, "vsm", valid_scores(s));
  std::vector<std::string> techs{"vsm"};
  FilterResult r = filter_dataset(in, techs);
  ASSERT_EQ(r.systems.size(), 1u);
  EXPECT_EQ(r.systems[0].label(), "ok 1");
  ASSERT_EQ(r.report.systems.size(), 2u);
  EXPECT_EQ(r.report.systems[0].system, "quiet 1");
  EXPECT_EQ(r.report.systems[0].reason, Exclusion::kNoSmells);
  EXPECT_EQ(r.report.systems[1].system, "four 1");
  EXPECT_EQ(r.report.systems[1].reason, Exclusion::kFewerThanFiveReports);
  EXPECT_TRUE(r.report.reports.empty());
}

TEST(Filter, InvalidReportsRemovedBeforeCounting) {
  // Five reports with one invalid leaves four: the size check must see four.
  SystemSnapshot s = synthetic("edge", 5, true);
  auto scores = valid_scores(s);
  scores["B2"]["B.java"] = std::nan("");
  add_scores(s, "vsm", scores);
  SystemSnapshot keep = synthetic("keep", 6, true);
  add_scores(keep, "vsm", valid_scores(keep));
  std::vector<std::string> techs{"vsm"};
  FilterResult r = filter_dataset({s, keep}, techs);
  ASSERT_EQ(r.systems.size(), 1u);
  EXPECT_EQ(r.systems[0].label(), "keep 1");
  ASSERT_EQ(r.report.reports.size(), 1u);
  EXPECT_EQ(r.report.reports[0].bug_id, "B2");
  EXPECT_EQ(r.report.reports[0].reason, Exclusion::kNanScore);
  ASSERT_EQ(r.report.systems.size(), 1u);
  EXPECT_EQ(r.report.systems[0].reason, Exclusion::kFewerThanFiveReports);
}

TEST(Filter, NoSmellsTakesPrecedenceOverSize) {
  SystemSnapshot s = synthetic("tiny", 2, false);
  add_scores(s, "vsm", valid_scores(s));
  SystemSnapshot keep = synthetic("keep", 6, true);
  add_scores(keep, "vsm", valid_scores(keep));
  std::vector<std::string> techs{"vsm"};
  FilterResult r = filter_dataset({s, keep}, techs);
  ASSERT_EQ(r.report.systems.size(), 1u);
  EXPECT_EQ(r.report.systems[0].reason, Exclusion::kNoSmells);
}

TEST(Filter, InvalidUnderOneOfSixTechniquesExcludedForAll) {
  SystemSnapshot s = synthetic("six", 7, true);
  std::vector<std::string> techs{"t1", "t2", "t3", "t4", "t5", "t6"};
  for (const auto& t : techs) {
    auto scores = valid_scores(s);
    if (t == "t4") scores["B3"] = {{"B.java", 0.9}};
    if (t == "t6") scores.erase("B5");
    add_scores(s, t, scores);
  }
  FilterResult r = filter_dataset({s}, techs);
  ASSERT_EQ(r.systems.size(), 1u);
  EXPECT_EQ(r.systems[0].reports.size(), 5u);
  EXPECT_EQ(r.systems[0].find_report("B3"), nullptr);
  EXPECT_EQ(r.systems[0].find_report("B5"), nullptr);
  ASSERT_EQ(r.report.reports.size(), 2u);
  EXPECT_EQ(r.report.reports[0].technique, "t4");
  EXPECT_EQ(r.report.reports[0].reason, Exclusion::kNoGoldInRanking);
  EXPECT_EQ(r.report.reports[1].technique, "t6");
  EXPECT_EQ(r.report.reports[1].reason, Exclusion::kMissingTechnique);
}

TEST(Filter, IdempotentAndReportsOnce) {
  SystemSnapshot s = synthetic("a", 8, true);
  auto scores = valid_scores(s);
  scores["B0"]["A.java"] = std::numeric_limits<double>::infinity();
  add_scores(s, "vsm", scores);
  std::vector<std::string> techs{"vsm"};
  FilterResult once = filter_dataset({s}, techs);
  FilterResult twice = filter_dataset(once.systems, techs);
  EXPECT_TRUE(twice.report.reports.empty());
  EXPECT_TRUE(twice.report.systems.empty());
  ASSERT_EQ(twice.systems.size(), 1u);
  EXPECT_EQ(twice.systems[0].reports.size(), once.systems[0].reports.size());
  EXPECT_EQ(once.report.to_json()["excluded_reports"].size(), 1u);
  std::ostringstream text;
  once.report.write_text(text);
  EXPECT_NE(text.str().find("a 1 bug B0: nan-score (vsm)"), std::string::npos);
}

TEST(Filter, EmptyResultIsError) {
  SystemSnapshot s = synthetic("a", 3, true);
  add_scores(s, "vsm", valid_scores(s));
  std::vector<std::string> techs{"vsm"};
  try {
    filter_dataset({s}, techs);
    FAIL() << "no exception";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "dataset empty after filtering");
  }
}

TEST(Bench4BL, ConvertsRepositoryXml) {
  TempDir dir;
  auto p = dir.write("repo.xml", R"(<?xml version="1.0" encoding="UTF-8"?>
<bugrepository name="DEMO">
  <bug id="101" opendate="2010-01-01" fixdate="2010-02-01">
    <buginformation>
      <summary>NPE in Store</summary>
      <description>Stack trace follows</description>
    </buginformation>
    <fixedFiles>
      <file type="M">org.demo.Store.java</file>
      <file type="M">org/demo/util/Helper.java</file>
    </fixedFiles>
  </bug>
  <bug id="102">
    <buginformation><summary>no fix</summary></buginformation>
  </bug>
  <bug id="101">
    <buginformation><summary>dup</summary></buginformation>
    <fixedFiles><file>org.demo.X.java</file></fixedFiles>
  </bug>
</bugrepository>
)");
  std::vector<std::string> warnings;
  auto bugs = convert_bench4bl_bugs(p, {"src/main/java"}, warnings);
  ASSERT_EQ(bugs.size(), 1u);
  EXPECT_EQ(bugs[0].id, "101");
  EXPECT_EQ(bugs[0].summary, "NPE in Store");
  EXPECT_EQ(bugs[0].description, "Stack trace follows");
  EXPECT_EQ(bugs[0].gold,
            (std::set<std::string>{"src/main/java/org/demo/Store.java", "src/main/java/org/demo/util/Helper.java"}));
  EXPECT_EQ(warnings.size(), 2u);

  auto bad = dir.write("bad.xml", "<other/>");
  EXPECT_THROW(convert_bench4bl_bugs(bad, {}, warnings), InputError);
}
