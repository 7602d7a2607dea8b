#include "sabl/search.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "sabl/error.hpp"
#include "sabl/parallel.hpp"
#include "sabl/text_util.hpp"

namespace sabl::gbli {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

int parse_level(std::string s, char prefix, int max, const std::string& whole) {
  if (!s.empty() && std::tolower(static_cast<unsigned char>(s[0])) == prefix) s.erase(0, 1);
  int value = 0;
  std::istringstream in(s);
  if (s.empty() || !(in >> value) || !in.eof() || value < 1 || value > max) {
    throw InputError("invalid configuration \"" + whole + "\"");
  }
  return value;
}

std::size_t metric_index(Metric m) { return static_cast<std::size_t>(m); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ConfigEntry::granularity_label() const {
  return "g" + std::to_string(static_cast<int>(config.granularity));
}

std::string ConfigEntry::aggregator_label() const {
  return "a" + std::to_string(static_cast<int>(config.aggregator));
}

std::vector<ConfigEntry> enumerate_full_configs(const smell::SelectorSet& selectors) {
  std::vector<ConfigEntry> out;
  for (int g = 1; g <= 3; ++g) {
    for (int a = 1; a <= smell::kNumAggregators; ++a) {
      for (int s = 1; s <= 5; ++s) {
        ConfigEntry e;
        e.config.granularity = static_cast<smell::GranularityFilter>(g);
        e.config.aggregator = static_cast<smell::Aggregator>(a);
        e.config.selector = selectors.by_level(s);
        e.config.selector_label = "s" + std::to_string(s);
        e.legacy = g == 1 && a == 1 && s == 1;
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

std::vector<ConfigEntry> enumerate_single_type_configs() {
  std::vector<ConfigEntry> out;
  auto add = [&out](smell::SmellType t, smell::GranularityFilter g, smell::Aggregator a) {
    ConfigEntry e;
    e.config.granularity = g;
    e.config.aggregator = a;
    e.config.selector = smell::SmellTypeSet{t};
    e.config.selector_label = std::string(smell::name(t));
    e.single_type = true;
    out.push_back(std::move(e));
  };
  for (smell::SmellType t : smell::all_smell_types()) {
    if (smell::granularity_of(t) != smell::Granularity::kClass) continue;
    for (auto a : {smell::Aggregator::kMax, smell::Aggregator::kExists}) add(t, smell::GranularityFilter::kClass, a);
  }
  for (smell::SmellType t : smell::all_smell_types()) {
    if (smell::granularity_of(t) != smell::Granularity::kMethod) continue;
    for (int a = 1; a <= 6; ++a) add(t, smell::GranularityFilter::kMethod, static_cast<smell::Aggregator>(a));
  }
  return out;
}

std::vector<ConfigEntry> enumerate_configs(const smell::SelectorSet& selectors, bool include_single_type) {
  std::vector<ConfigEntry> out = enumerate_full_configs(selectors);
  if (include_single_type) {
    auto single = enumerate_single_type_configs();
    out.insert(out.end(), single.begin(), single.end());
  }
  return out;
}

ConfigEntry parse_config(const std::string& text, const smell::SelectorSet& selectors) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ',')) parts.push_back(trim(part));
  if (parts.size() != 3) throw InputError("invalid configuration \"" + text + "\" (expected g,a,s)");
  ConfigEntry e;
  const int g = parse_level(parts[0], 'g', 3, text);
  const int a = parse_level(parts[1], 'a', smell::kNumAggregators, text);
  e.config.granularity = static_cast<smell::GranularityFilter>(g);
  e.config.aggregator = static_cast<smell::Aggregator>(a);
  if (auto type = smell::parse_smell_type(parts[2])) {
    e.config.selector = smell::SmellTypeSet{*type};
    e.config.selector_label = std::string(smell::name(*type));
    e.single_type = true;
  } else {
    const int s = parse_level(parts[2], 's', 5, text);
    e.config.selector = selectors.by_level(s);
    e.config.selector_label = "s" + std::to_string(s);
    e.legacy = g == 1 && a == 1 && s == 1;
  }
  return e;
}

IdealRow ideal_config(std::span<const ConfigRow> rows, std::size_t total_reports) {
  IdealRow ideal;
  if (rows.empty()) return ideal;
  const std::size_t num_systems = rows.front().per_system.size();
  ideal.config_index.assign(num_systems, {});
  ideal.alpha_index.assign(num_systems, {});
  std::array<double, kNumMetrics> sums{};
  for (std::size_t s = 0; s < num_systems; ++s) {
    for (Metric m : kAllMetrics) {
      const std::size_t mi = metric_index(m);
      std::size_t best_row = 0;
      double best = rows[0].per_system[s].at_best[mi].total(m);
      for (std::size_t r = 1; r < rows.size(); ++r) {
        const double v = rows[r].per_system[s].at_best[mi].total(m);
        if (v > best) {
          best = v;
          best_row = r;
        }
      }
      ideal.config_index[s][mi] = best_row;
      ideal.alpha_index[s][mi] = rows[best_row].per_system[s].best_alpha[mi];
      sums[mi] += best;
    }
    if (ideal.alpha_index[s][metric_index(Metric::kMap)] > 0) ++ideal.systems_improved;
  }
  for (std::size_t mi = 0; mi < kNumMetrics; ++mi) {
    ideal.values[mi] = total_reports == 0 ? 0.0 : sums[mi] / static_cast<double>(total_reports);
  }
  return ideal;
}

ConfigSearchReport config_search(std::span<const PreparedSystem> systems, std::span<const ConfigEntry> configs,
                                 const SearchOptions& options) {
  if (systems.empty()) throw Error("configuration search needs at least one system");
  ConfigSearchReport report;
  const std::size_t ns = systems.size();
  const std::size_t nc = configs.size();
  for (const auto& s : systems) {
    report.systems.push_back(s.label());
    report.total_reports += s.reports().size();
  }

  std::vector<SystemOptimum> optima(nc * ns);
  std::vector<MetricTotals> baselines(ns);
  std::vector<SweepTable> tables(options.keep_curves ? nc * ns : 0);

  parallel_for(nc * ns, options.jobs, [&](std::size_t task) {
    const std::size_t c = task / ns;
    const std::size_t s = task % ns;
    const PreparedSystem& sys = systems[s];
    SweepTable table = sweep(sys, sys.n_smell(configs[c].config));
    SystemOptimum& opt = optima[task];
    for (Metric m : kAllMetrics) {
      AlphaSweepResult r = summarize_sweep(table, m);
      const std::size_t mi = metric_index(m);
      opt.best_alpha[mi] = r.best.front();
      opt.maximizers[mi] = r.best.size();
      opt.at_best[mi] = table.points[r.best.front()];
    }
    if (c == 0) baselines[s] = table.points[0];
    if (options.keep_curves) tables[task] = table;
  });

  MetricTotals base;
  for (const auto& b : baselines) base += b;
  for (Metric m : kAllMetrics) report.baseline[metric_index(m)] = base.mean(m);

  report.rows.resize(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    ConfigRow& row = report.rows[c];
    row.entry = configs[c];
    row.per_system.assign(optima.begin() + static_cast<std::ptrdiff_t>(c * ns),
                          optima.begin() + static_cast<std::ptrdiff_t>((c + 1) * ns));
    std::array<double, kNumMetrics> sums{};
    for (const auto& opt : row.per_system) {
      for (Metric m : kAllMetrics) sums[metric_index(m)] += opt.at_best[metric_index(m)].total(m);
      if (opt.best_alpha[metric_index(Metric::kMap)] > 0) ++row.systems_improved;
    }
    for (std::size_t mi = 0; mi < kNumMetrics; ++mi) {
      row.values[mi] = sums[mi] / static_cast<double>(report.total_reports);
    }
  }
  report.order.resize(nc);
  std::iota(report.order.begin(), report.order.end(), 0);
  const std::size_t map = metric_index(Metric::kMap);
  std::stable_sort(report.order.begin(), report.order.end(), [&](std::size_t a, std::size_t b) {
    return report.rows[a].values[map] > report.rows[b].values[map];
  });
  report.ideal = ideal_config(report.rows, report.total_reports);

  if (options.keep_curves) {
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t s = 0; s < ns; ++s) report.curves.push_back({c, s, std::move(tables[c * ns + s])});
    }
  }
  return report;
}

void write_search_csv(std::ostream& out, const ConfigSearchReport& report) {
  auto values = [&out](const std::array<double, kNumMetrics>& v) {
    for (double x : v) out << ',' << format_fixed(x, 4);
  };
  out << "# baseline";
  for (Metric m : kAllMetrics) {
    out << ' ' << metric_name(m) << '=' << format_fixed(report.baseline[metric_index(m)], 4);
  }
  out << " reports=" << report.total_reports << " systems=" << report.systems.size() << '\n';
  out << "rank,granularity,aggregator,selector,top1,top5,top10,mrr,map,systems,note\n";
  out << "ideal,*,*,*";
  values(report.ideal.values);
  out << ',' << report.ideal.systems_improved << ",per-system best\n";
  std::size_t rank = 1;
  for (std::size_t idx : report.order) {
    const ConfigRow& row = report.rows[idx];
    out << rank++ << ',' << row.entry.granularity_label() << ',' << row.entry.aggregator_label() << ','
        << csv_field(row.entry.config.selector_label);
    values(row.values);
    out << ',' << row.systems_improved << ',';
    if (row.entry.legacy) {
      out << "legacy-bli";
    } else if (row.entry.single_type) {
      out << "single-type";
    }
    out << '\n';
  }
}

json search_to_json(const ConfigSearchReport& report) {
  auto metrics = [](const std::array<double, kNumMetrics>& v) {
    json j = json::object();
    for (Metric m : kAllMetrics) j[std::string(metric_name(m))] = std::stod(format_fixed(v[metric_index(m)], 4));
    return j;
  };
  json doc;
  doc["systems"] = report.systems;
  doc["total_reports"] = report.total_reports;
  doc["baseline"] = metrics(report.baseline);
  json ideal = metrics(report.ideal.values);
  ideal["systems"] = report.ideal.systems_improved;
  json choice = json::array();
  for (std::size_t s = 0; s < report.ideal.config_index.size(); ++s) {
    json per = json::object();
    for (Metric m : kAllMetrics) {
      const std::size_t mi = metric_index(m);
      per[std::string(metric_name(m))] = {
          {"config", report.rows[report.ideal.config_index[s][mi]].entry.label()},
          {"alpha", std::stod(format_fixed(alpha_at(report.ideal.alpha_index[s][mi]), 2))}};
    }
    choice.push_back({{"system", report.systems[s]}, {"best", per}});
  }
  ideal["per_system"] = choice;
  doc["ideal"] = ideal;
  json rows = json::array();
  std::size_t rank = 1;
  for (std::size_t idx : report.order) {
    const ConfigRow& row = report.rows[idx];
    json r = metrics(row.values);
    r["rank"] = rank++;
    r["config"] = row.entry.label();
    r["granularity"] = row.entry.granularity_label();
    r["aggregator"] = row.entry.aggregator_label();
    r["selector"] = row.entry.config.selector_label;
    r["systems"] = row.systems_improved;
    r["legacy"] = row.entry.legacy;
    r["single_type"] = row.entry.single_type;
    json alphas = json::array();
    for (std::size_t s = 0; s < row.per_system.size(); ++s) {
      json per = json::object();
      for (Metric m : kAllMetrics) {
        const std::size_t mi = metric_index(m);
        per[std::string(metric_name(m))] = {
            {"alpha", std::stod(format_fixed(alpha_at(row.per_system[s].best_alpha[mi]), 2))},
            {"maximizers", row.per_system[s].maximizers[mi]}};
      }
      alphas.push_back({{"system", report.systems[s]}, {"best", per}});
    }
    r["per_system"] = alphas;
    rows.push_back(std::move(r));
  }
  doc["rows"] = rows;
  return doc;
}

json curves_to_json(const ConfigSearchReport& report, std::span<const ConfigEntry> configs) {
  json curves = json::array();
  for (const auto& c : report.curves) {
    json entry = {{"config", configs[c.config].label()}, {"system", report.systems[c.system]}};
    json alpha = json::array();
    for (std::size_t k = 0; k < kGridSize; ++k) alpha.push_back(std::stod(format_fixed(alpha_at(k), 2)));
    entry["alpha"] = alpha;
    for (Metric m : kAllMetrics) {
      AlphaSweepResult r = summarize_sweep(c.table, m);
      json vals = json::array();
      for (double v : r.values) vals.push_back(std::stod(format_fixed(v, 4)));
      entry[std::string(metric_name(m))] = {
          {"values", vals},
          {"best_alpha", std::stod(format_fixed(r.chosen_alpha(), 2))},
          {"maximizers", r.best.size()},
          {"shape", std::string(curve_shape_name(classify_curve(r)))}};
    }
    curves.push_back(std::move(entry));
  }
  return json{{"curves", curves}};
}

}  // namespace sabl::gbli
