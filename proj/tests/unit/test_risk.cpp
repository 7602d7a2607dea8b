#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sabl/error.hpp"
#include "sabl/risk.hpp"

using namespace sabl;
using namespace sabl::smell;

namespace {

struct CountRow {
  SmellType type;
  std::uint64_t modules, buggy;
};

// Counts of the large-scale study (sixteen types, any-smell total, all files).
const CountRow kCounts[] = {
    {SmellType::kBlobClass, 1151, 246},           {SmellType::kShotgunSurgery, 357, 59},
    {SmellType::kGodClass, 6108, 959},            {SmellType::kBlobOperation, 6802, 1021},
    {SmellType::kIntensiveCoupling, 2683, 290},   {SmellType::kDataClumps, 8928, 702},
    {SmellType::kRefusedParentBequest, 1519, 119}, {SmellType::kInternalDuplication, 3958, 306},
    {SmellType::kExternalDuplication, 6875, 501}, {SmellType::kFeatureEnvy, 9614, 669},
    {SmellType::kMessageChains, 2641, 176},       {SmellType::kSchizophrenicClass, 3675, 222},
    {SmellType::kTraditionBreaker, 2159, 74},     {SmellType::kSiblingDuplication, 7860, 267},
    {SmellType::kDataClass, 16028, 361},          {SmellType::kDistortedHierarchy, 5, 0},
};
constexpr std::uint64_t kAllModules = 654674, kAllBuggy = 15834;

RiskTable study_table() {
  std::map<SmellType, RiskCounts> per;
  for (const auto& r : kCounts) per[r.type] = {r.modules, r.buggy};
  return risk_from_counts(per, {63953, 3668}, kAllModules, kAllBuggy);
}

}  // namespace

TEST(RiskRow, BlobClassFromCounts) {
  RiskRow r = risk_row("Blob Class", SmellType::kBlobClass, {1151, 246}, 654674, 15834);
  EXPECT_NEAR(*r.risk * 100, 21.373, 5e-4);
  EXPECT_NEAR(*r.risk_complement * 100, 2.385, 5e-4);
  EXPECT_NEAR(*r.relative_risk, 8.960, 5e-4);
}

TEST(RiskRow, MatchesDefinitionForEveryStudyType) {
  for (const auto& c : kCounts) {
    RiskRow r = risk_row("t", c.type, {c.modules, c.buggy}, kAllModules, kAllBuggy);
    const double risk = static_cast<double>(c.buggy) / static_cast<double>(c.modules);
    const double comp = static_cast<double>(kAllBuggy - c.buggy) / static_cast<double>(kAllModules - c.modules);
    EXPECT_DOUBLE_EQ(*r.risk, risk);
    EXPECT_DOUBLE_EQ(*r.risk_complement, comp);
    EXPECT_DOUBLE_EQ(*r.relative_risk, risk == 0 ? 0.0 : risk / comp);
  }
}

TEST(RiskRow, ZeroBuggyGivesZeroRr) {
  RiskRow r = risk_row("Distorted Hierarchy", SmellType::kDistortedHierarchy, {5, 0}, 654674, 15834);
  EXPECT_EQ(*r.risk, 0.0);
  EXPECT_EQ(*r.relative_risk, 0.0);
}

TEST(RiskRow, EdgeCases) {
  RiskRow empty = risk_row("x", SmellType::kGodClass, {0, 0}, 10, 3);
  EXPECT_FALSE(empty.risk.has_value());
  EXPECT_FALSE(empty.relative_risk.has_value());
  RiskRow whole = risk_row("x", SmellType::kGodClass, {10, 3}, 10, 3);
  EXPECT_DOUBLE_EQ(*whole.risk, 0.3);
  EXPECT_FALSE(whole.risk_complement.has_value());
  EXPECT_FALSE(whole.relative_risk.has_value());
  RiskRow inf = risk_row("x", SmellType::kGodClass, {4, 3}, 10, 3);
  EXPECT_EQ(*inf.risk_complement, 0.0);
  EXPECT_TRUE(std::isinf(*inf.relative_risk));
  EXPECT_THROW(risk_row("x", SmellType::kGodClass, {4, 5}, 10, 6), Error);
  EXPECT_THROW(risk_row("x", SmellType::kGodClass, {11, 1}, 10, 3), Error);
  EXPECT_THROW(risk_row("x", SmellType::kGodClass, {5, 4}, 10, 3), Error);
}

TEST(RelativeRisk, EqualRisksGiveUnitRr) {
  // 4 of 10 smelly modules buggy, 2 of 5 clean modules buggy: both risks 0.4.
  std::set<std::string> universe, buggy;
  std::map<SmellType, std::set<std::string>> smelly;
  for (int i = 0; i < 15; ++i) universe.insert("m" + std::to_string(i));
  for (int i = 0; i < 10; ++i) smelly[SmellType::kGodClass].insert("m" + std::to_string(i));
  for (int i : {0, 1, 2, 3, 10, 11}) buggy.insert("m" + std::to_string(i));
  RiskTable t = relative_risk(universe, buggy, smelly);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_DOUBLE_EQ(*t.rows[0].relative_risk, 1.0);
}

TEST(RelativeRisk, DegenerateWholeUniverse) {
  std::set<std::string> all{"a", "b", "c"};
  RiskTable t = relative_risk(all, all, {{SmellType::kGodClass, all}});
  EXPECT_DOUBLE_EQ(*t.rows[0].risk, t.universe_risk());
  EXPECT_FALSE(t.rows[0].risk_complement.has_value());
  EXPECT_FALSE(t.rows[0].relative_risk.has_value());
}

TEST(RelativeRisk, EmptyBuggySetGivesZeroRr) {
  std::set<std::string> all{"a", "b", "c", "d"};
  RiskTable t = relative_risk(all, {}, {{SmellType::kGodClass, {"a"}}, {SmellType::kFeatureEnvy, {"b", "c"}}});
  for (const auto& r : t.rows) EXPECT_EQ(*r.relative_risk, 0.0);
}

TEST(RelativeRisk, RejectsSetsOutsideUniverse) {
  std::set<std::string> all{"a", "b"};
  EXPECT_THROW(relative_risk(all, {"z"}, {}), Error);
  EXPECT_THROW(relative_risk(all, {}, {{SmellType::kGodClass, {"z"}}}), Error);
}

TEST(RelativeRisk, MatchesExhaustiveCounting) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 50);
    std::set<std::string> universe, buggy;
    std::map<SmellType, std::set<std::string>> smelly;
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("m" + std::to_string(i));
    universe.insert(ids.begin(), ids.end());
    for (const auto& id : ids) {
      if (rng() % 4 == 0) buggy.insert(id);
      for (int t = 0; t < 16; ++t) {
        if (rng() % 9 == 0) smelly[static_cast<SmellType>(t)].insert(id);
      }
    }
    RiskTable table = relative_risk(universe, buggy, smelly);
    for (const auto& [type, members] : smelly) {
      const RiskRow* row = table.find(type);
      ASSERT_NE(row, nullptr);
      std::uint64_t mt = 0, bt = 0, mc = 0, bc = 0;
      for (const auto& id : ids) {
        const bool s = members.contains(id), b = buggy.contains(id);
        if (s) {
          ++mt;
          bt += b;
        } else {
          ++mc;
          bc += b;
        }
      }
      EXPECT_EQ(row->counts.modules, mt);
      EXPECT_EQ(row->counts.buggy, bt);
      EXPECT_DOUBLE_EQ(*row->risk, static_cast<double>(bt) / static_cast<double>(mt));
      if (mc == 0) {
        EXPECT_FALSE(row->relative_risk.has_value());
      } else {
        const double comp = static_cast<double>(bc) / static_cast<double>(mc);
        EXPECT_DOUBLE_EQ(*row->risk_complement, comp);
        if (bt == 0) {
          EXPECT_EQ(*row->relative_risk, 0.0);
        } else if (comp == 0) {
          EXPECT_TRUE(std::isinf(*row->relative_risk));
        } else {
          EXPECT_DOUBLE_EQ(*row->relative_risk, (static_cast<double>(bt) / mt) / comp);
        }
      }
    }
    // Total row: any smell.
    std::uint64_t any = 0, any_b = 0;
    for (const auto& id : ids) {
      bool s = false;
      for (const auto& [t, m] : smelly) s = s || m.contains(id);
      any += s;
      any_b += s && buggy.contains(id);
    }
    EXPECT_EQ(table.total.counts.modules, any);
    EXPECT_EQ(table.total.counts.buggy, any_b);
  }
}

TEST(RiskTable, StudyRowsSortedByRr) {
  RiskTable t = study_table();
  ASSERT_EQ(t.rows.size(), 16u);
  EXPECT_EQ(t.rows.front().type, SmellType::kBlobClass);
  EXPECT_EQ(t.rows[4].type, SmellType::kIntensiveCoupling);
  EXPECT_EQ(t.rows.back().type, SmellType::kDistortedHierarchy);
  for (std::size_t i = 1; i < t.rows.size(); ++i) EXPECT_GE(*t.rows[i - 1].relative_risk, *t.rows[i].relative_risk);
  EXPECT_NEAR(*t.total.relative_risk, 2.785, 5e-4);
  EXPECT_NEAR(t.universe_risk() * 100, 2.419, 5e-4);
}

TEST(Selectors, StudySelectors) {
  SelectorSet s = derive_selectors(study_table());
  EXPECT_EQ(s.s1.size(), 16u);
  EXPECT_EQ(s.s2.size(), 14u);
  EXPECT_FALSE(s.s2.contains(SmellType::kDataClass));
  EXPECT_FALSE(s.s2.contains(SmellType::kDistortedHierarchy));
  EXPECT_EQ(s.s3.size(), 12u);
  EXPECT_TRUE(s.s3.contains(SmellType::kSchizophrenicClass));
  EXPECT_FALSE(s.s3.contains(SmellType::kTraditionBreaker));
  EXPECT_EQ(s.s4.size(), 10u);
  EXPECT_TRUE(s.s4.contains(SmellType::kFeatureEnvy));
  EXPECT_FALSE(s.s4.contains(SmellType::kMessageChains));
  EXPECT_EQ(s.s5, (SmellTypeSet{SmellType::kBlobClass, SmellType::kShotgunSurgery, SmellType::kGodClass,
                                SmellType::kBlobOperation, SmellType::kIntensiveCoupling}));
  EXPECT_TRUE(s.s5.is_subset_of(s.s4));
  EXPECT_TRUE(s.s4.is_subset_of(s.s3));
  EXPECT_TRUE(s.s3.is_subset_of(s.s2));
  EXPECT_TRUE(s.s2.is_subset_of(s.s1));
  EXPECT_TRUE(s.warnings.empty());
}

TEST(Selectors, TieAtFifthPlaceKeepsAllAndWarns) {
  std::map<SmellType, RiskCounts> per;
  const SmellType types[] = {SmellType::kBlobClass, SmellType::kGodClass, SmellType::kDataClass,
                             SmellType::kFeatureEnvy, SmellType::kDataClumps, SmellType::kMessageChains,
                             SmellType::kTraditionBreaker};
  // Per-type risks 6/10 .. then three types tied at 2/10.
  const std::uint64_t buggy[] = {6, 5, 4, 3, 2, 2, 2};
  for (int i = 0; i < 7; ++i) per[types[i]] = {10, buggy[i]};
  RiskTable t = risk_from_counts(per, {70, 24}, 1000, 100);
  SelectorSet s = derive_selectors(t);
  EXPECT_EQ(s.s5.size(), 7u);
  EXPECT_FALSE(s.warnings.empty());
}

TEST(Selectors, AllEqualRrUnderStrictInequality) {
  std::map<SmellType, RiskCounts> per{{SmellType::kGodClass, {10, 1}}, {SmellType::kDataClass, {10, 1}}};
  // Risk 0.1 everywhere: RR = 1 for both types and for the total.
  RiskTable t = risk_from_counts(per, {20, 2}, 100, 10);
  SelectorSet s = derive_selectors(t);
  EXPECT_TRUE(s.s2.empty());
  EXPECT_TRUE(s.s3.empty());
  EXPECT_TRUE(s.s4.empty());
  EXPECT_EQ(s.s5.size(), 2u);
}
