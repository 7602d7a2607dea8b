#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "sabl/error.hpp"
#include "sabl/risk.hpp"
#include "sabl/text_util.hpp"

namespace sabl::smell {
namespace {

// Descending RR; +inf first, undefined last; type order breaks ties.
bool rr_before(const RiskRow& a, const RiskRow& b) {
  const double ra = a.relative_risk.value_or(-1.0);
  const double rb = b.relative_risk.value_or(-1.0);
  if (ra != rb) return ra > rb;
  return a.type < b.type;
}

std::string pct_or_na(const std::optional<double>& v) { return v ? format_fixed(*v * 100.0, 4) : "NA"; }

std::string rr_or_na(const std::optional<double>& v) {
  if (!v) return "NA";
  if (std::isinf(*v)) return "inf";
  return format_fixed(*v, 4);
}

}  // namespace

const RiskRow* RiskTable::find(SmellType type) const {
  for (const RiskRow& row : rows) {
    if (row.type == type) return &row;
  }
  return nullptr;
}

double RiskTable::universe_risk() const {
  return all_modules == 0 ? 0.0 : static_cast<double>(all_buggy) / static_cast<double>(all_modules);
}

RiskRow risk_row(std::string label, std::optional<SmellType> type, RiskCounts counts, std::uint64_t all_modules,
                 std::uint64_t all_buggy) {
  if (counts.buggy > counts.modules || counts.modules > all_modules || all_buggy > all_modules ||
      counts.buggy > all_buggy || all_buggy - counts.buggy > all_modules - counts.modules)
    throw Error("inconsistent risk counts for " + label);

  RiskRow row{std::move(label), type, counts, std::nullopt, std::nullopt, std::nullopt};
  if (counts.modules > 0) row.risk = static_cast<double>(counts.buggy) / static_cast<double>(counts.modules);
  const std::uint64_t rest = all_modules - counts.modules;
  if (rest > 0) row.risk_complement = static_cast<double>(all_buggy - counts.buggy) / static_cast<double>(rest);

  if (row.risk && row.risk_complement) {
    if (*row.risk == 0.0) {
      row.relative_risk = 0.0;
    } else if (*row.risk_complement == 0.0) {
      row.relative_risk = std::numeric_limits<double>::infinity();
    } else {
      row.relative_risk = *row.risk / *row.risk_complement;
    }
  }
  return row;
}

RiskTable risk_from_counts(const std::map<SmellType, RiskCounts>& per_type, RiskCounts total,
                           std::uint64_t all_modules, std::uint64_t all_buggy) {
  RiskTable table;
  table.all_modules = all_modules;
  table.all_buggy = all_buggy;
  for (const auto& [type, counts] : per_type) {
    table.rows.push_back(risk_row(std::string(name(type)), type, counts, all_modules, all_buggy));
  }
  std::stable_sort(table.rows.begin(), table.rows.end(), rr_before);
  table.total = risk_row("Total (all smell types)", std::nullopt, total, all_modules, all_buggy);
  return table;
}

RiskTable relative_risk(const std::set<std::string>& universe, const std::set<std::string>& buggy,
                        const std::map<SmellType, std::set<std::string>>& smelly) {
  for (const auto& m : buggy) {
    if (!universe.contains(m)) throw Error("buggy module outside the module universe: " + m);
  }
  std::map<SmellType, RiskCounts> per_type;
  std::set<std::string> any_smell;
  for (const auto& [type, modules] : smelly) {
    if (modules.empty()) continue;
    RiskCounts c;
    for (const auto& m : modules) {
      if (!universe.contains(m)) throw Error("smelly module outside the module universe: " + m);
      ++c.modules;
      if (buggy.contains(m)) ++c.buggy;
      any_smell.insert(m);
    }
    per_type.emplace(type, c);
  }
  RiskCounts total;
  for (const auto& m : any_smell) {
    ++total.modules;
    if (buggy.contains(m)) ++total.buggy;
  }
  return risk_from_counts(per_type, total, universe.size(), buggy.size());
}

const SmellTypeSet& SelectorSet::by_level(int level) const {
  switch (level) {
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    case 4: return s4;
    case 5: return s5;
    default: throw Error("selector level must be 1..5");
  }
}

SelectorSet derive_selectors(const RiskTable& table) {
  SelectorSet sel;
  sel.s1 = SmellTypeSet::all();

  std::vector<const RiskRow*> ranked;
  for (const RiskRow& row : table.rows) {
    if (!row.type || !row.relative_risk) continue;
    ranked.push_back(&row);
    const double rr = *row.relative_risk;
    if (rr > 1.0) sel.s2.insert(*row.type);
    if (row.risk && table.total.risk && *row.risk > *table.total.risk) sel.s3.insert(*row.type);
    if (table.total.relative_risk && rr > *table.total.relative_risk) sel.s4.insert(*row.type);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const RiskRow* a, const RiskRow* b) { return rr_before(*a, *b); });

  constexpr std::size_t kTop = 5;
  for (std::size_t i = 0; i < ranked.size() && i < kTop; ++i) sel.s5.insert(*ranked[i]->type);
  if (ranked.size() > kTop) {
    const double cut = *ranked[kTop - 1]->relative_risk;
    for (std::size_t i = kTop; i < ranked.size() && *ranked[i]->relative_risk == cut; ++i) {
      sel.s5.insert(*ranked[i]->type);
      sel.warnings.push_back("s5 tie at the top-five boundary: including " + ranked[i]->label);
    }
  }
  return sel;
}

void write_risk_csv(std::ostream& out, const RiskTable& table) {
  out << "type,modules,buggy,risk_pct,risk_complement_pct,rr\n";
  auto line = [&](const RiskRow& row) {
    out << row.label << ',' << row.counts.modules << ',' << row.counts.buggy << ',' << pct_or_na(row.risk) << ','
        << pct_or_na(row.risk_complement) << ',' << rr_or_na(row.relative_risk) << '\n';
  };
  for (const RiskRow& row : table.rows) line(row);
  line(table.total);
  out << "All code files," << table.all_modules << ',' << table.all_buggy << ','
      << format_fixed(table.universe_risk() * 100.0, 4) << ",NA,NA\n";
}

}  // namespace sabl::smell
