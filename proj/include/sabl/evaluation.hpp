#pragma once

// Ranking metrics (Top N, reciprocal rank, average precision) and paired
// comparison statistics.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sabl::eval {

struct RankingOutcome {
  std::string bug_id;
  std::vector<std::size_t> gold_ranks;  // 1-based, ascending; gold modules present in the ranking
  std::size_t gold_total = 0;           // size of the gold set, present or not

  std::optional<std::size_t> first_gold_rank() const {
    if (gold_ranks.empty()) return std::nullopt;
    return gold_ranks.front();
  }
  bool hit_within(std::size_t n) const { return !gold_ranks.empty() && gold_ranks.front() <= n; }
};

/// Throws Error("empty gold set") when gold is empty.
RankingOutcome evaluate_ranking(std::string bug_id, std::span<const std::string> ordered_modules,
                                const std::set<std::string>& gold);

/// Outcome from already-known gold ranks (any order). Throws on empty gold set.
RankingOutcome outcome_from_ranks(std::string bug_id, std::vector<std::size_t> gold_ranks, std::size_t gold_total);

/// 1 / rank of the first gold module, 0 when none is ranked.
double reciprocal_rank(const RankingOutcome& outcome);

/// Mean over gold modules of precision at their rank; absent gold modules contribute 0.
double average_precision(const RankingOutcome& outcome);

/// Reports with a gold module in the top n. Throws Error("no bug reports") when empty.
std::size_t top_n_hits(std::span<const RankingOutcome> outcomes, std::size_t n);
double top_n(std::span<const RankingOutcome> outcomes, std::size_t n);

double mean_reciprocal_rank(std::span<const RankingOutcome> outcomes);
double mean_average_precision(std::span<const RankingOutcome> outcomes);

struct MetricReport {
  std::map<std::size_t, std::size_t> hits;  // N -> reports hit
  std::map<std::size_t, double> top_n;      // N -> hits / |B|
  double mrr = 0.0;
  double map = 0.0;
  std::size_t reports = 0;
  std::vector<RankingOutcome> per_report;
  std::vector<double> per_report_rr;
  std::vector<double> per_report_ap;
};

inline constexpr std::size_t kDefaultCutoffs[] = {1, 5, 10};

MetricReport summarize(std::vector<RankingOutcome> outcomes,
                       std::span<const std::size_t> cutoffs = kDefaultCutoffs);

struct WilcoxonResult {
  double statistic = 0.0;  // W+ (sum of positive-difference ranks)
  double z = 0.0;
  double p_value = 1.0;    // two-sided
  std::size_t pairs = 0;   // nonzero differences used
};

/// Two-sided signed-rank test, normal approximation with tie and
/// continuity correction; zero differences dropped. Throws
/// Error("insufficient pairs") with fewer than 6 nonzero differences and on
/// length mismatch.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

enum class EffectMagnitude { kNegligible, kSmall, kMedium, kLarge };

std::string_view magnitude_name(EffectMagnitude m);

/// negligible < 0.147 <= small < 0.33 <= medium < 0.474 <= large, on |d|.
EffectMagnitude classify_effect(double d);

struct CliffsDelta {
  double d = 0.0;
  EffectMagnitude magnitude = EffectMagnitude::kNegligible;
};

/// (#{x_i > y_j} - #{x_i < y_j}) / (|x| |y|), computed by sorting.
/// Throws Error when either sample is empty.
CliffsDelta cliffs_delta(std::span<const double> x, std::span<const double> y);

}  // namespace sabl::eval
