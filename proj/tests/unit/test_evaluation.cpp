#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "sabl/error.hpp"
#include "sabl/evaluation.hpp"

using namespace sabl;
using namespace sabl::eval;

namespace {

RankingOutcome outcome(std::vector<std::string> ordered, std::set<std::string> gold) {
  return evaluate_ranking("b", ordered, gold);
}

// Average precision from the summation formula, position by position.
double brute_ap(const std::vector<std::string>& ordered, const std::set<std::string>& gold) {
  double sum = 0;
  std::size_t found = 0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const bool g = gold.contains(ordered[i]);
    found += g;
    const double precision = static_cast<double>(found) / static_cast<double>(i + 1);
    sum += precision * (g ? 1.0 : 0.0);
  }
  return sum / static_cast<double>(gold.size());
}

double brute_cliff(const std::vector<double>& x, const std::vector<double>& y) {
  long long gt = 0, lt = 0;
  for (double a : x) {
    for (double b : y) {
      gt += a > b;
      lt += a < b;
    }
  }
  return static_cast<double>(gt - lt) / static_cast<double>(x.size() * y.size());
}

}  // namespace

TEST(ReciprocalRank, Examples) {
  EXPECT_EQ(reciprocal_rank(outcome({"a", "b", "c", "G"}, {"G"})), 0.25);
  EXPECT_EQ(reciprocal_rank(outcome({"G", "b"}, {"G"})), 1.0);
  EXPECT_EQ(reciprocal_rank(outcome({"a", "b"}, {"G"})), 0.0);
}

TEST(AveragePrecision, Examples) {
  EXPECT_EQ(average_precision(outcome({"A", "B", "C"}, {"A"})), 1.0);
  EXPECT_NEAR(average_precision(outcome({"B", "A", "C"}, {"A", "C"})), (0.5 + 2.0 / 3.0) / 2.0, 1e-15);
  EXPECT_NEAR(average_precision(outcome({"B", "A", "C"}, {"A", "C"})), 0.58333, 1e-5);
  EXPECT_EQ(average_precision(outcome({"a", "b"}, {"G"})), 0.0);
}

TEST(AveragePrecision, AbsentGoldCountsInDenominator) {
  EXPECT_EQ(average_precision(outcome({"A", "B"}, {"A", "Missing"})), 0.5);
}

TEST(AveragePrecision, EmptyGoldThrows) { EXPECT_THROW(outcome({"A"}, {}), Error); }

TEST(AveragePrecision, RandomFixturesMatchFormula) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> ordered;
    for (int i = 0; i < 10; ++i) ordered.push_back("m" + std::to_string(i));
    std::shuffle(ordered.begin(), ordered.end(), rng);
    std::set<std::string> gold;
    for (int i = 0; i < 10; ++i) {
      if (rng() % 3 == 0) gold.insert("m" + std::to_string(i));
    }
    if (gold.empty()) gold.insert("m0");
    RankingOutcome o = outcome(ordered, gold);
    ASSERT_NEAR(average_precision(o), brute_ap(ordered, gold), 1e-12);
    if (gold.size() == 1) {
      ASSERT_EQ(average_precision(o), reciprocal_rank(o));
    }
  }
}

TEST(TopN, PerfectRankings) {
  std::vector<RankingOutcome> v{outcome({"G", "x"}, {"G"}), outcome({"H", "y"}, {"H"})};
  EXPECT_EQ(top_n(v, 1), 1.0);
  EXPECT_EQ(mean_average_precision(v), 1.0);
  EXPECT_EQ(mean_reciprocal_rank(v), 1.0);
}

TEST(TopN, EmptyThrows) {
  std::vector<RankingOutcome> none;
  EXPECT_THROW(top_n(none, 1), Error);
  EXPECT_THROW(mean_reciprocal_rank(none), Error);
  EXPECT_THROW(mean_average_precision(none), Error);
  EXPECT_THROW(summarize({}), Error);
}

TEST(TopN, RandomFixtureMatchesCountingOracle) {
  std::mt19937 rng(41);
  std::vector<RankingOutcome> v;
  std::vector<std::size_t> first;
  for (int b = 0; b < 20; ++b) {
    std::vector<std::string> ordered;
    for (int i = 0; i < 30; ++i) ordered.push_back("m" + std::to_string(i));
    std::shuffle(ordered.begin(), ordered.end(), rng);
    std::set<std::string> gold{"m" + std::to_string(rng() % 30), "m" + std::to_string(rng() % 30)};
    v.push_back(outcome(ordered, gold));
    std::size_t f = 0;
    while (!gold.contains(ordered[f])) ++f;
    first.push_back(f + 1);
  }
  for (std::size_t n : {1, 5, 10, 30}) {
    std::size_t count = 0;
    for (auto f : first) count += f <= n;
    EXPECT_EQ(top_n_hits(v, n), count);
    EXPECT_EQ(top_n(v, n), static_cast<double>(count) / 20.0);
  }
  EXPECT_LE(top_n(v, 1), top_n(v, 5));
  EXPECT_LE(top_n(v, 5), top_n(v, 10));
}

TEST(TopN, HitCountExactness) {
  // 4,676 of 6,931 reports with a gold module in the top ten.
  std::vector<RankingOutcome> v;
  for (int i = 0; i < 6931; ++i) v.push_back(outcome_from_ranks("b", {i < 4676 ? 3u : 11u}, 1));
  MetricReport r = summarize(v);
  EXPECT_EQ(r.hits.at(10), 4676u);
  EXPECT_EQ(r.top_n.at(10) * 6931, 4676.0);
  EXPECT_NEAR(r.top_n.at(10), 0.675, 5e-4);
}

TEST(Metrics, InvariantUnderRelabeling) {
  std::vector<std::string> ordered{"a", "b", "c", "d", "e"};
  std::set<std::string> gold{"b", "e"};
  std::vector<std::string> relabeled{"zz1", "zz2", "zz3", "zz4", "zz5"};
  std::set<std::string> gold2{"zz2", "zz5"};
  EXPECT_EQ(average_precision(outcome(ordered, gold)), average_precision(outcome(relabeled, gold2)));
  EXPECT_EQ(reciprocal_rank(outcome(ordered, gold)), reciprocal_rank(outcome(relabeled, gold2)));
}

TEST(Summarize, PerReportValuesAndMeans) {
  std::vector<RankingOutcome> v{outcome({"A", "B", "C"}, {"C"}), outcome({"B", "A", "C"}, {"A", "C"})};
  MetricReport r = summarize(v);
  EXPECT_EQ(r.reports, 2u);
  EXPECT_NEAR(r.mrr, (1.0 / 3 + 0.5) / 2, 1e-15);
  EXPECT_NEAR(r.map, (1.0 / 3 + (0.5 + 2.0 / 3) / 2) / 2, 1e-15);
  EXPECT_EQ(r.hits.at(1), 0u);
  EXPECT_EQ(r.hits.at(5), 2u);
}

// Reference values from scipy.stats.wilcoxon(x, y, zero_method="wilcox",
// correction=True, method="approx").
TEST(Wilcoxon, ReferenceTenPairs) {
  std::vector<double> x{125, 115, 130, 140, 140, 115, 140, 125, 140, 135};
  std::vector<double> y{110, 122, 125, 120, 140, 124, 123, 137, 135, 145};
  WilcoxonResult w = wilcoxon_signed_rank(x, y);
  EXPECT_EQ(w.pairs, 9u);
  EXPECT_EQ(w.statistic, 27.0);  // W+; scipy reports min(W+, W-) = 18
  EXPECT_NEAR(w.p_value, 0.6352893188352069, 1e-12);
}

TEST(Wilcoxon, ReferenceNinePairs) {
  std::vector<double> x{1.83, 0.50, 1.62, 2.48, 1.68, 1.88, 1.55, 3.06, 1.30};
  std::vector<double> y{0.878, 0.647, 0.598, 2.05, 1.06, 1.29, 1.06, 3.14, 1.29};
  WilcoxonResult w = wilcoxon_signed_rank(x, y);
  EXPECT_EQ(w.statistic, 40.0);
  EXPECT_NEAR(w.p_value, 0.04401098401295143, 1e-12);
}

TEST(Wilcoxon, ReferenceWithTies) {
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  std::vector<double> y{2, 2, 1, 1, 3, 3, 9, 4, 4, 1, 0, 15};
  WilcoxonResult w = wilcoxon_signed_rank(x, y);
  EXPECT_NEAR(w.p_value, 0.04459567554391414, 1e-12);
}

TEST(Wilcoxon, IdenticalSamplesInsufficientPairs) {
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8};
  try {
    wilcoxon_signed_rank(x, x);
    FAIL() << "no exception";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "insufficient pairs");
  }
  std::vector<double> y{1, 2, 3, 4, 5, 6, 7};
  EXPECT_THROW(wilcoxon_signed_rank(x, y), Error);
}

TEST(Wilcoxon, StochasticallyLargerSampleIsSignificant) {
  std::mt19937 rng(2);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> x, y;
  for (int i = 0; i < 100; ++i) {
    const double base = noise(rng);
    y.push_back(base);
    x.push_back(base + 1.0 + 0.5 * noise(rng));
  }
  EXPECT_LT(wilcoxon_signed_rank(x, y).p_value, 0.01);
}

TEST(CliffsDelta, Basics) {
  std::vector<double> a{1, 2, 3}, b{3, 1, 2};
  EXPECT_EQ(cliffs_delta(a, b).d, 0.0);
  EXPECT_EQ(cliffs_delta(a, b).magnitude, EffectMagnitude::kNegligible);
  std::vector<double> hi{10, 11}, lo{1, 2, 3};
  EXPECT_EQ(cliffs_delta(hi, lo).d, 1.0);
  EXPECT_EQ(cliffs_delta(hi, lo).magnitude, EffectMagnitude::kLarge);
  std::vector<double> none;
  EXPECT_THROW(cliffs_delta(none, lo), Error);
}

TEST(CliffsDelta, MatchesAllPairsAndIsAntisymmetric) {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> v(0, 6);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> x(1 + rng() % 25), y(1 + rng() % 25);
    for (auto& e : x) e = v(rng);
    for (auto& e : y) e = v(rng) * 0.9;
    ASSERT_NEAR(cliffs_delta(x, y).d, brute_cliff(x, y), 1e-15);
    ASSERT_EQ(cliffs_delta(x, y).d, -cliffs_delta(y, x).d);
  }
}

TEST(CliffsDelta, MagnitudeBoundaries) {
  EXPECT_EQ(classify_effect(0.146), EffectMagnitude::kNegligible);
  EXPECT_EQ(classify_effect(0.147), EffectMagnitude::kSmall);
  EXPECT_EQ(classify_effect(0.30), EffectMagnitude::kSmall);
  EXPECT_EQ(classify_effect(0.329), EffectMagnitude::kSmall);
  EXPECT_EQ(classify_effect(0.33), EffectMagnitude::kMedium);
  EXPECT_EQ(classify_effect(0.473), EffectMagnitude::kMedium);
  EXPECT_EQ(classify_effect(0.474), EffectMagnitude::kLarge);
  EXPECT_EQ(classify_effect(-0.474), EffectMagnitude::kLarge);
  EXPECT_EQ(magnitude_name(EffectMagnitude::kMedium), "medium");
}
