#pragma once

// Configuration enumeration, the per-system alpha-optimized configuration
// search and the pseudo-ideal bound.

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sabl/gbli.hpp"
#include "sabl/risk.hpp"

namespace sabl::gbli {

struct ConfigEntry {
  smell::SmellConfiguration config;
  bool single_type = false;
  bool legacy = false;  // <g1, a1, s1>, the original bug likelihood index

  std::string granularity_label() const;
  std::string aggregator_label() const;
  std::string label() const { return config.label(); }
};

/// 150 configurations in g-major, a, s order.
std::vector<ConfigEntry> enumerate_full_configs(const smell::SelectorSet& selectors);

/// 68 configurations: class-level types with a2 and a3 at g1, then
/// method-level types with a1..a6 at g2.
std::vector<ConfigEntry> enumerate_single_type_configs();

std::vector<ConfigEntry> enumerate_configs(const smell::SelectorSet& selectors, bool include_single_type);

/// Parses "g,a,s" where g is g1..g3 (or 1..3), a is a1..a10 and s is s1..s5
/// or a smell type name. Throws InputError.
ConfigEntry parse_config(const std::string& text, const smell::SelectorSet& selectors);

inline constexpr std::size_t kNumMetrics = 5;

/// One system's optimum for one configuration, per metric.
struct SystemOptimum {
  std::array<std::size_t, kNumMetrics> best_alpha{};  // smallest maximizing grid index
  std::array<std::size_t, kNumMetrics> maximizers{};  // size of the maximizer set
  std::array<MetricTotals, kNumMetrics> at_best;
};

struct ConfigRow {
  ConfigEntry entry;
  std::array<double, kNumMetrics> values{};  // pooled over all reports
  std::size_t systems_improved = 0;          // systems whose MAP optimum has alpha > 0
  std::vector<SystemOptimum> per_system;
};

struct IdealRow {
  std::array<double, kNumMetrics> values{};
  std::size_t systems_improved = 0;
  // Per system and metric, the index (into ConfigSearchReport::rows before
  // sorting, i.e. enumeration order) and alpha of the chosen optimum.
  std::vector<std::array<std::size_t, kNumMetrics>> config_index;
  std::vector<std::array<std::size_t, kNumMetrics>> alpha_index;
};

struct CurveRecord {
  std::size_t config = 0;  // enumeration index
  std::size_t system = 0;
  SweepTable table;
};

struct ConfigSearchReport {
  std::vector<std::string> systems;
  std::size_t total_reports = 0;
  std::array<double, kNumMetrics> baseline{};
  std::vector<ConfigRow> rows;  // enumeration order
  std::vector<std::size_t> order;  // row indices sorted by MAP descending, ties in enumeration order
  IdealRow ideal;
  std::vector<CurveRecord> curves;  // only when requested
};

struct SearchOptions {
  unsigned jobs = 1;
  bool keep_curves = false;
};

ConfigSearchReport config_search(std::span<const PreparedSystem> systems, std::span<const ConfigEntry> configs,
                                 const SearchOptions& options = {});

/// Per system and metric the best optimum over all rows (first row on
/// ties), pooled over every report.
IdealRow ideal_config(std::span<const ConfigRow> rows, std::size_t total_reports);

/// rank,granularity,aggregator,selector,top1,top5,top10,mrr,map,systems,note
/// with the ideal row first (rank "ideal"); the baseline is a comment line.
void write_search_csv(std::ostream& out, const ConfigSearchReport& report);
nlohmann::json search_to_json(const ConfigSearchReport& report);
nlohmann::json curves_to_json(const ConfigSearchReport& report, std::span<const ConfigEntry> configs);

}  // namespace sabl::gbli
