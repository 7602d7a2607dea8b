#include "sabl/gbli.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sabl/error.hpp"
#include "sabl/simd/kernels.hpp"

namespace sabl::gbli {

void normalize_in_place(std::span<double> values) {
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) throw Error("normalize: values must be finite and non-negative");
  }
  const double max = simd::max_value(values);
  if (max > 0.0) simd::divide(values, max, values);
}

ScoreMap normalize(const ScoreMap& values) {
  std::vector<double> dense;
  dense.reserve(values.size());
  for (const auto& [m, v] : values) dense.push_back(v);
  normalize_in_place(dense);
  ScoreMap out;
  std::size_t i = 0;
  for (const auto& [m, v] : values) out.emplace_hint(out.end(), m, dense[i++]);
  return out;
}

ScoreMap shift_nonnegative(const ScoreMap& values) {
  double min = 0.0;
  for (const auto& [m, v] : values) min = std::min(min, v);
  if (min >= 0.0) return values;
  ScoreMap out;
  for (const auto& [m, v] : values) out.emplace_hint(out.end(), m, v - min);
  return out;
}

ScoreMap combine(const ScoreMap& n_score, const ScoreMap& n_smell, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("alpha must lie in [0, 1]");
  std::vector<std::string> only_score, only_smell;
  for (const auto& [m, v] : n_score) {
    if (!n_smell.contains(m)) only_score.push_back(m);
  }
  for (const auto& [m, v] : n_smell) {
    if (!n_score.contains(m)) only_smell.push_back(m);
  }
  if (!only_score.empty() || !only_smell.empty()) {
    std::string msg = "module key sets differ:";
    for (const auto& m : only_score) msg += " " + m + " (score only)";
    for (const auto& m : only_smell) msg += " " + m + " (smell only)";
    throw Error(msg);
  }
  const double keep = 1.0 - alpha;
  ScoreMap out;
  for (const auto& [m, s] : n_score) {
    const double product_score = keep * s;
    const double product_smell = alpha * n_smell.at(m);
    out.emplace_hint(out.end(), m, product_score + product_smell);
  }
  return out;
}

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::kTop1: return "top1";
    case Metric::kTop5: return "top5";
    case Metric::kTop10: return "top10";
    case Metric::kMrr: return "mrr";
    case Metric::kMap: return "map";
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Metric m : kAllMetrics) {
    if (t == metric_name(m)) return m;
  }
  if (t == "top-1") return Metric::kTop1;
  if (t == "top-5") return Metric::kTop5;
  if (t == "top-10") return Metric::kTop10;
  return std::nullopt;
}

double MetricTotals::total(Metric metric) const {
  switch (metric) {
    case Metric::kTop1: return static_cast<double>(top1);
    case Metric::kTop5: return static_cast<double>(top5);
    case Metric::kTop10: return static_cast<double>(top10);
    case Metric::kMrr: return rr_sum;
    case Metric::kMap: return ap_sum;
  }
  return 0.0;
}

double MetricTotals::mean(Metric metric) const {
  return reports == 0 ? 0.0 : total(metric) / static_cast<double>(reports);
}

void MetricTotals::add(const eval::RankingOutcome& outcome) {
  top1 += outcome.hit_within(1) ? 1 : 0;
  top5 += outcome.hit_within(5) ? 1 : 0;
  top10 += outcome.hit_within(10) ? 1 : 0;
  rr_sum += eval::reciprocal_rank(outcome);
  ap_sum += eval::average_precision(outcome);
  ++reports;
}

MetricTotals& MetricTotals::operator+=(const MetricTotals& other) {
  top1 += other.top1;
  top5 += other.top5;
  top10 += other.top10;
  rr_sum += other.rr_sum;
  ap_sum += other.ap_sum;
  reports += other.reports;
  return *this;
}

PreparedSystem PreparedSystem::prepare(const io::SystemSnapshot& snapshot, const io::TechniqueScores& scores) {
  PreparedSystem sys;
  sys.label_ = snapshot.label();
  sys.smells_ = snapshot.smells;

  std::set<std::string> universe(snapshot.modules.begin(), snapshot.modules.end());
  std::vector<const ScoreMap*> maps;
  for (const auto& r : snapshot.reports) {
    auto it = scores.by_bug.find(r.id);
    if (it == scores.by_bug.end()) {
      throw Error(sys.label_ + ": technique " + scores.technique + " has no ranking for bug " + r.id);
    }
    for (const auto& [m, v] : it->second) universe.insert(m);
    maps.push_back(&it->second);
  }
  sys.universe_.assign(universe.begin(), universe.end());

  for (std::size_t i = 0; i < snapshot.reports.size(); ++i) {
    const auto& r = snapshot.reports[i];
    const ScoreMap& raw = *maps[i];
    double min = 0.0;
    for (const auto& [m, v] : raw) {
      if (!std::isfinite(v)) throw Error("invalid score for " + m + " in bug " + r.id);
      min = std::min(min, v);
    }
    PreparedReport pr;
    pr.bug_id = r.id;
    pr.gold_total = r.gold.size();
    pr.n_score.assign(sys.universe_.size(), 0.0);
    // Both the universe and the map are sorted, so a merge walk suffices.
    std::size_t u = 0;
    for (const auto& [m, v] : raw) {
      while (sys.universe_[u] != m) ++u;
      pr.n_score[u] = v - min;
    }
    normalize_in_place(pr.n_score);
    for (std::size_t k = 0; k < sys.universe_.size(); ++k) {
      if (r.gold.contains(sys.universe_[k])) pr.gold_index.push_back(static_cast<std::uint32_t>(k));
    }
    sys.reports_.push_back(std::move(pr));
  }
  return sys;
}

std::vector<double> PreparedSystem::smell_values(const smell::SmellConfiguration& config) const {
  std::vector<double> out(universe_.size(), 0.0);
  for (std::size_t k = 0; k < universe_.size(); ++k) out[k] = smell::smell_value(universe_[k], smells_, config);
  return out;
}

std::vector<double> PreparedSystem::n_smell(const smell::SmellConfiguration& config) const {
  std::vector<double> out = smell_values(config);
  normalize_in_place(out);
  return out;
}

ScoreMap PreparedSystem::n_score_map(std::size_t report) const { return to_map(reports_.at(report).n_score); }

ScoreMap PreparedSystem::to_map(std::span<const double> dense) const {
  if (dense.size() != universe_.size()) throw Error("dense vector does not match the universe");
  ScoreMap out;
  for (std::size_t k = 0; k < dense.size(); ++k) out.emplace_hint(out.end(), universe_[k], dense[k]);
  return out;
}

namespace {

// A smell vector with no signal leaves the baseline ranking in place at
// every alpha, including 1 where the blend would collapse to all zeros.
double effective_alpha(std::span<const double> n_smell, double alpha) {
  return simd::max_value(n_smell) == 0.0 ? 0.0 : alpha;
}

}  // namespace

MetricTotals evaluate_alpha(const PreparedSystem& system, std::span<const double> n_smell, double alpha,
                            SweepScratch& scratch) {
  const std::size_t n = system.universe().size();
  if (n_smell.size() != n) throw Error("smell vector does not match the universe");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("alpha must lie in [0, 1]");
  alpha = effective_alpha(n_smell, alpha);
  const simd::KernelTable& k = simd::kernels();
  scratch.combined.resize(n);
  double* buf = scratch.combined.data();
  MetricTotals totals;
  for (const auto& r : system.reports()) {
    k.blend(r.n_score.data(), n_smell.data(), alpha, buf, n);
    scratch.ranks.clear();
    for (std::uint32_t g : r.gold_index) {
      const double v = buf[g];
      // Modules ahead of g: strictly higher scores anywhere, plus equal
      // scores at smaller ids.
      scratch.ranks.push_back(k.count_greater(buf, n, v) + k.count_equal(buf, g, v) + 1);
    }
    totals.add(eval::outcome_from_ranks({}, scratch.ranks, r.gold_total));
  }
  return totals;
}

ir::ScoredRanking rank_report(const PreparedSystem& system, std::size_t report, std::span<const double> n_smell,
                              double alpha, std::string technique) {
  const auto& r = system.reports().at(report);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("alpha must lie in [0, 1]");
  ScoreMap combined = combine(system.to_map(r.n_score), system.to_map(n_smell), effective_alpha(n_smell, alpha));
  return ir::rank(combined, r.bug_id, std::move(technique));
}

MetricTotals evaluate_alpha_reference(const PreparedSystem& system, std::span<const double> n_smell, double alpha) {
  MetricTotals totals;
  for (std::size_t i = 0; i < system.reports().size(); ++i) {
    const auto& r = system.reports()[i];
    ir::ScoredRanking ranking = rank_report(system, i, n_smell, alpha);
    std::set<std::string> gold;
    for (std::uint32_t g : r.gold_index) gold.insert(system.universe()[g]);
    std::vector<std::size_t> ranks;
    for (std::size_t pos = 0; pos < ranking.entries.size(); ++pos) {
      if (gold.contains(ranking.entries[pos].module)) ranks.push_back(pos + 1);
    }
    totals.add(eval::outcome_from_ranks(r.bug_id, std::move(ranks), r.gold_total));
  }
  return totals;
}

SweepTable sweep(const PreparedSystem& system, std::span<const double> n_smell) {
  SweepTable table;
  SweepScratch scratch;
  for (std::size_t k = 0; k < kGridSize; ++k) table.points[k] = evaluate_alpha(system, n_smell, alpha_at(k), scratch);
  return table;
}

AlphaSweepResult summarize_sweep(const SweepTable& table, Metric metric, std::string config) {
  AlphaSweepResult out;
  out.config = std::move(config);
  out.metric = metric;
  double best_total = table.points[0].total(metric);
  for (std::size_t k = 0; k < kGridSize; ++k) {
    const double t = table.points[k].total(metric);
    out.values[k] = table.points[k].mean(metric);
    if (t > best_total) best_total = t;
  }
  for (std::size_t k = 0; k < kGridSize; ++k) {
    if (table.points[k].total(metric) == best_total) out.best.push_back(k);
  }
  out.best_value = out.values[out.best.front()];
  return out;
}

AlphaSweepResult sweep_alpha(const PreparedSystem& system, const smell::SmellConfiguration& config, Metric metric) {
  return summarize_sweep(sweep(system, system.n_smell(config)), metric, config.label());
}

double optimize_alpha(const AlphaSweepResult& result) { return result.chosen_alpha(); }

CurveShape classify_curve(const AlphaSweepResult& result) {
  if (result.best.front() == 0) return CurveShape::kBaseline;
  if (result.best.back() == kGridSize - 1) return CurveShape::kPlateau;
  return CurveShape::kMountain;
}

std::string_view curve_shape_name(CurveShape shape) {
  switch (shape) {
    case CurveShape::kBaseline: return "baseline";
    case CurveShape::kMountain: return "mountain";
    case CurveShape::kPlateau: return "plateau";
  }
  return "unknown";
}

}  // namespace sabl::gbli
