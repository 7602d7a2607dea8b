#include <algorithm>

#include "sabl/error.hpp"
#include "sabl/evaluation.hpp"

namespace sabl::eval {

RankingOutcome evaluate_ranking(std::string bug_id, std::span<const std::string> ordered_modules,
                                const std::set<std::string>& gold) {
  if (gold.empty()) throw Error("empty gold set for bug " + bug_id);
  RankingOutcome out{std::move(bug_id), {}, gold.size()};
  for (std::size_t i = 0; i < ordered_modules.size(); ++i) {
    if (gold.contains(ordered_modules[i])) out.gold_ranks.push_back(i + 1);
  }
  return out;
}

RankingOutcome outcome_from_ranks(std::string bug_id, std::vector<std::size_t> gold_ranks, std::size_t gold_total) {
  if (gold_total == 0) throw Error("empty gold set for bug " + bug_id);
  std::sort(gold_ranks.begin(), gold_ranks.end());
  return {std::move(bug_id), std::move(gold_ranks), gold_total};
}

double reciprocal_rank(const RankingOutcome& outcome) {
  const auto first = outcome.first_gold_rank();
  return first ? 1.0 / static_cast<double>(*first) : 0.0;
}

double average_precision(const RankingOutcome& outcome) {
  if (outcome.gold_total == 0) throw Error("empty gold set for bug " + outcome.bug_id);
  double sum = 0.0;
  for (std::size_t k = 0; k < outcome.gold_ranks.size(); ++k) {
    sum += static_cast<double>(k + 1) / static_cast<double>(outcome.gold_ranks[k]);
  }
  return sum / static_cast<double>(outcome.gold_total);
}

std::size_t top_n_hits(std::span<const RankingOutcome> outcomes, std::size_t n) {
  if (outcomes.empty()) throw Error("no bug reports");
  return static_cast<std::size_t>(
      std::count_if(outcomes.begin(), outcomes.end(), [n](const RankingOutcome& o) { return o.hit_within(n); }));
}

double top_n(std::span<const RankingOutcome> outcomes, std::size_t n) {
  return static_cast<double>(top_n_hits(outcomes, n)) / static_cast<double>(outcomes.size());
}

double mean_reciprocal_rank(std::span<const RankingOutcome> outcomes) {
  if (outcomes.empty()) throw Error("no bug reports");
  double sum = 0.0;
  for (const auto& o : outcomes) sum += reciprocal_rank(o);
  return sum / static_cast<double>(outcomes.size());
}

double mean_average_precision(std::span<const RankingOutcome> outcomes) {
  if (outcomes.empty()) throw Error("no bug reports");
  double sum = 0.0;
  for (const auto& o : outcomes) sum += average_precision(o);
  return sum / static_cast<double>(outcomes.size());
}

MetricReport summarize(std::vector<RankingOutcome> outcomes, std::span<const std::size_t> cutoffs) {
  if (outcomes.empty()) throw Error("no bug reports");
  MetricReport report;
  report.reports = outcomes.size();
  for (std::size_t n : cutoffs) {
    report.hits[n] = top_n_hits(outcomes, n);
    report.top_n[n] = static_cast<double>(report.hits[n]) / static_cast<double>(report.reports);
  }
  double rr_sum = 0.0, ap_sum = 0.0;
  for (const auto& o : outcomes) {
    const double rr = reciprocal_rank(o);
    const double ap = average_precision(o);
    report.per_report_rr.push_back(rr);
    report.per_report_ap.push_back(ap);
    rr_sum += rr;
    ap_sum += ap;
  }
  report.mrr = rr_sum / static_cast<double>(report.reports);
  report.map = ap_sum / static_cast<double>(report.reports);
  report.per_report = std::move(outcomes);
  return report;
}

}  // namespace sabl::eval
