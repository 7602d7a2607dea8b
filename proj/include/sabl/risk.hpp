#pragma once

// Relative risk of smelly modules being buggy, and selector derivation from it.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sabl/smell.hpp"

namespace sabl::smell {

struct RiskCounts {
  std::uint64_t modules = 0;  // |M_t|
  std::uint64_t buggy = 0;    // |B_t|
};

struct RiskRow {
  std::string label;
  std::optional<SmellType> type;  // empty for the all-smells total row
  RiskCounts counts;
  std::optional<double> risk;             // |B_t| / |M_t|; absent when |M_t| = 0
  std::optional<double> risk_complement;  // |B_all \ B_t| / |M_all \ M_t|; absent when M_t = M_all
  std::optional<double> relative_risk;    // +infinity when the complement risk is 0
};

struct RiskTable {
  std::vector<RiskRow> rows;  // one per smell type with |M_t| > 0, descending RR
  RiskRow total;              // any smell as one pseudo-type
  std::uint64_t all_modules = 0;
  std::uint64_t all_buggy = 0;

  const RiskRow* find(SmellType type) const;
  double universe_risk() const;
};

/// Risk, complement risk and relative risk from counts. Throws Error when
/// the counts are inconsistent (|B_t| > |M_t|, |M_t| > |M_all|, ...).
RiskRow risk_row(std::string label, std::optional<SmellType> type, RiskCounts counts,
                 std::uint64_t all_modules, std::uint64_t all_buggy);

RiskTable risk_from_counts(const std::map<SmellType, RiskCounts>& per_type, RiskCounts total,
                           std::uint64_t all_modules, std::uint64_t all_buggy);

/// Set-based computation. Module keys must be unique across systems.
RiskTable relative_risk(const std::set<std::string>& universe, const std::set<std::string>& buggy,
                        const std::map<SmellType, std::set<std::string>>& smelly);

struct SelectorSet {
  SmellTypeSet s1, s2, s3, s4, s5;
  std::vector<std::string> warnings;

  const SmellTypeSet& by_level(int level) const;
};

/// s1 all types; s2 RR > 1; s3 risk above the all-smells risk; s4 RR above
/// the all-smells RR; s5 the five highest RR, keeping every type tied at
/// the cut (with a warning).
SelectorSet derive_selectors(const RiskTable& table);

/// Columns: type,modules,buggy,risk_pct,risk_complement_pct,rr.
void write_risk_csv(std::ostream& out, const RiskTable& table);

}  // namespace sabl::smell
