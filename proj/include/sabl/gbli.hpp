#pragma once

// Score normalization, the gBLI combination and alpha sweeps over a system.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sabl/dataio.hpp"
#include "sabl/evaluation.hpp"
#include "sabl/ir.hpp"
#include "sabl/smell.hpp"

namespace sabl::gbli {

using ir::ScoreMap;

/// value / max; all zeros stay zero. Throws Error on negative or
/// non-finite input.
ScoreMap normalize(const ScoreMap& values);
void normalize_in_place(std::span<double> values);

/// Subtracts the minimum when it is negative; otherwise returns the input.
ScoreMap shift_nonnegative(const ScoreMap& values);

/// (1 - alpha) * n_score + alpha * n_smell per module. Throws Error when the
/// key sets differ (naming the symmetric difference) or alpha is outside [0, 1].
ScoreMap combine(const ScoreMap& n_score, const ScoreMap& n_smell, double alpha);

inline constexpr std::size_t kGridSize = 101;

/// Grid point k of {0.00, 0.01, ..., 1.00}.
inline double alpha_at(std::size_t k) { return static_cast<double>(k) / 100.0; }

enum class Metric { kTop1, kTop5, kTop10, kMrr, kMap };

inline constexpr std::array<Metric, 5> kAllMetrics = {Metric::kTop1, Metric::kTop5, Metric::kTop10, Metric::kMrr,
                                                       Metric::kMap};

std::string_view metric_name(Metric metric);
std::optional<Metric> parse_metric(std::string_view text);

/// Per-system sums so systems can be pooled over the union of their reports.
struct MetricTotals {
  std::uint64_t top1 = 0;
  std::uint64_t top5 = 0;
  std::uint64_t top10 = 0;
  double rr_sum = 0.0;
  double ap_sum = 0.0;
  std::uint64_t reports = 0;

  /// Sum for the metric (hit count or RR/AP sum).
  double total(Metric metric) const;
  /// Mean over reports; 0 when there are none.
  double mean(Metric metric) const;
  void add(const eval::RankingOutcome& outcome);
  MetricTotals& operator+=(const MetricTotals& other);
  bool operator==(const MetricTotals&) const = default;
};

struct PreparedReport {
  std::string bug_id;
  std::vector<double> n_score;           // over the system universe
  std::vector<std::uint32_t> gold_index; // universe positions of gold modules, ascending
  std::size_t gold_total = 0;
};

/// One system under one technique, laid out densely over a module universe
/// sorted by id so that index order is the tie order.
class PreparedSystem {
 public:
  /// Universe = snapshot modules plus every module the technique scored.
  /// Negative scores are shifted to 0; modules the technique did not score
  /// get 0 after the shift. Throws Error when a report has no scores or a
  /// score is non-finite.
  static PreparedSystem prepare(const io::SystemSnapshot& snapshot, const io::TechniqueScores& scores);

  const std::string& label() const { return label_; }
  const std::vector<std::string>& universe() const { return universe_; }
  const std::vector<PreparedReport>& reports() const { return reports_; }

  /// Raw smell values over the universe.
  std::vector<double> smell_values(const smell::SmellConfiguration& config) const;
  /// Normalized smell values over the universe.
  std::vector<double> n_smell(const smell::SmellConfiguration& config) const;

  ScoreMap n_score_map(std::size_t report) const;
  ScoreMap to_map(std::span<const double> dense) const;

 private:
  std::string label_;
  std::vector<std::string> universe_;
  std::vector<PreparedReport> reports_;
  smell::SmellReport smells_;
};

/// Reusable buffer for evaluate_alpha.
struct SweepScratch {
  std::vector<double> combined;
  std::vector<std::size_t> ranks;
};

/// Metric totals of the gBLI rankings of every report at one alpha.
MetricTotals evaluate_alpha(const PreparedSystem& system, std::span<const double> n_smell, double alpha,
                            SweepScratch& scratch);

/// Same result computed by materializing and sorting every ranking.
MetricTotals evaluate_alpha_reference(const PreparedSystem& system, std::span<const double> n_smell, double alpha);

/// gBLI ranking of one report.
ir::ScoredRanking rank_report(const PreparedSystem& system, std::size_t report, std::span<const double> n_smell,
                              double alpha, std::string technique = {});

struct SweepTable {
  std::array<MetricTotals, kGridSize> points;
};

SweepTable sweep(const PreparedSystem& system, std::span<const double> n_smell);

struct AlphaSweepResult {
  std::string config;
  Metric metric = Metric::kMap;
  std::array<double, kGridSize> values{};
  std::vector<std::size_t> best;  // grid indices of every maximizer, ascending
  double best_value = 0.0;

  /// Smallest maximizing alpha.
  double chosen_alpha() const { return alpha_at(best.front()); }
};

AlphaSweepResult summarize_sweep(const SweepTable& table, Metric metric, std::string config = {});
AlphaSweepResult sweep_alpha(const PreparedSystem& system, const smell::SmellConfiguration& config, Metric metric);

/// Smallest maximizing alpha.
double optimize_alpha(const AlphaSweepResult& result);

enum class CurveShape { kBaseline, kMountain, kPlateau };

/// baseline: alpha 0 attains the maximum; plateau: the maximum is reached
/// above 0 and held at 1; mountain: the maximum lies strictly inside.
CurveShape classify_curve(const AlphaSweepResult& result);
std::string_view curve_shape_name(CurveShape shape);

}  // namespace sabl::gbli
