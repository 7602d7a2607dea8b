#include <algorithm>
#include <cctype>
#include <cmath>

#include "sabl/error.hpp"
#include "sabl/smell.hpp"

namespace sabl::smell {
namespace {

struct TypeInfo {
  SmellType type;
  std::string_view name;
  Granularity granularity;
};

constexpr std::array<TypeInfo, kNumSmellTypes> kTypes{{
    {SmellType::kBlobClass, "Blob Class", Granularity::kClass},
    {SmellType::kDataClass, "Data Class", Granularity::kClass},
    {SmellType::kDistortedHierarchy, "Distorted Hierarchy", Granularity::kClass},
    {SmellType::kGodClass, "God Class", Granularity::kClass},
    {SmellType::kRefusedParentBequest, "Refused Parent Bequest", Granularity::kClass},
    {SmellType::kSchizophrenicClass, "Schizophrenic Class", Granularity::kClass},
    {SmellType::kTraditionBreaker, "Tradition Breaker", Granularity::kClass},
    {SmellType::kBlobOperation, "Blob Operation", Granularity::kMethod},
    {SmellType::kDataClumps, "Data Clumps", Granularity::kMethod},
    {SmellType::kExternalDuplication, "External Duplication", Granularity::kMethod},
    {SmellType::kFeatureEnvy, "Feature Envy", Granularity::kMethod},
    {SmellType::kIntensiveCoupling, "Intensive Coupling", Granularity::kMethod},
    {SmellType::kInternalDuplication, "Internal Duplication", Granularity::kMethod},
    {SmellType::kMessageChains, "Message Chains", Granularity::kMethod},
    {SmellType::kShotgunSurgery, "Shotgun Surgery", Granularity::kMethod},
    {SmellType::kSiblingDuplication, "Sibling Duplication", Granularity::kMethod},
}};

constexpr std::array<SmellType, kNumSmellTypes> kAllTypes = [] {
  std::array<SmellType, kNumSmellTypes> out{};
  for (std::size_t i = 0; i < kNumSmellTypes; ++i) out[i] = kTypes[i].type;
  return out;
}();

std::string squash(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace

std::string_view name(SmellType type) { return kTypes[static_cast<std::size_t>(type)].name; }

Granularity granularity_of(SmellType type) { return kTypes[static_cast<std::size_t>(type)].granularity; }

std::optional<SmellType> parse_smell_type(std::string_view text) {
  const std::string key = squash(text);
  for (const TypeInfo& info : kTypes) {
    if (squash(info.name) == key) return info.type;
  }
  return std::nullopt;
}

std::span<const SmellType> all_smell_types() { return kAllTypes; }

std::vector<SmellType> SmellTypeSet::types() const {
  std::vector<SmellType> out;
  for (SmellType t : kAllTypes) {
    if (contains(t)) out.push_back(t);
  }
  return out;
}

SmellReport::SmellReport(std::vector<SmellInstance> instances) : instances_(std::move(instances)) {
  std::stable_sort(instances_.begin(), instances_.end(),
                   [](const SmellInstance& a, const SmellInstance& b) { return a.module < b.module; });
  for (std::size_t i = 0; i < instances_.size();) {
    std::size_t j = i;
    while (j < instances_.size() && instances_[j].module == instances_[i].module) ++j;
    ranges_.emplace(instances_[i].module, std::make_pair(i, j));
    i = j;
  }
}

std::span<const SmellInstance> SmellReport::for_module(const std::string& module) const {
  const auto it = ranges_.find(module);
  if (it == ranges_.end()) return {};
  return std::span<const SmellInstance>(instances_).subspan(it->second.first, it->second.second - it->second.first);
}

std::vector<std::string> SmellReport::modules() const {
  std::vector<std::string> out;
  out.reserve(ranges_.size());
  for (const auto& [module, range] : ranges_) out.push_back(module);
  return out;
}

std::string SmellConfiguration::label() const {
  return "g" + std::to_string(static_cast<int>(granularity)) + ",a" + std::to_string(static_cast<int>(aggregator)) +
         "," + selector_label;
}

bool granularity_matches(GranularityFilter filter, SmellType type) {
  switch (filter) {
    case GranularityFilter::kClass: return granularity_of(type) == Granularity::kClass;
    case GranularityFilter::kMethod: return granularity_of(type) == Granularity::kMethod;
    case GranularityFilter::kBoth: return true;
  }
  return false;
}

std::vector<SmellInstance> select_instances(std::span<const SmellInstance> instances,
                                            const SmellConfiguration& config) {
  std::vector<SmellInstance> out;
  for (const SmellInstance& inst : instances) {
    if (config.selector.contains(inst.type) && granularity_matches(config.granularity, inst.type)) out.push_back(inst);
  }
  return out;
}

double aggregate(std::span<const SmellInstance> instances, Aggregator aggregator) {
  if (instances.empty()) return 0.0;

  std::vector<double> severities;
  severities.reserve(instances.size());
  for (const SmellInstance& inst : instances) severities.push_back(inst.severity);

  // Per-type max severity and count, in type order.
  std::array<int, kNumSmellTypes> type_max{};
  std::array<int, kNumSmellTypes> type_count{};
  for (const SmellInstance& inst : instances) {
    const auto t = static_cast<std::size_t>(inst.type);
    type_max[t] = std::max(type_max[t], inst.severity);
    ++type_count[t];
  }
  std::vector<double> per_type_max, per_type_count;
  for (std::size_t t = 0; t < kNumSmellTypes; ++t) {
    if (type_count[t] == 0) continue;
    per_type_max.push_back(type_max[t]);
    per_type_count.push_back(type_count[t]);
  }

  switch (aggregator) {
    case Aggregator::kSum: {
      double sum = 0.0;
      for (double s : severities) sum += s;
      return sum;
    }
    case Aggregator::kMax: return *std::max_element(severities.begin(), severities.end());
    case Aggregator::kExists: return 1.0;
    case Aggregator::kCount: return static_cast<double>(instances.size());
    case Aggregator::kMean: return mean(severities);
    case Aggregator::kMedian: return median(std::move(severities));
    case Aggregator::kMeanTypeMax: return mean(per_type_max);
    case Aggregator::kMedianTypeMax: return median(std::move(per_type_max));
    case Aggregator::kMeanTypeCount: return mean(per_type_count);
    case Aggregator::kMedianTypeCount: return median(std::move(per_type_count));
  }
  return 0.0;
}

double smell_value(const std::string& module, const SmellReport& report, const SmellConfiguration& config) {
  const auto selected = select_instances(report.for_module(module), config);
  return aggregate(selected, config.aggregator);
}

int severity_from_metric(double value, double threshold) {
  if (!(threshold > 0.0)) throw Error("severity threshold must be positive");
  if (!(value >= threshold)) throw Error("metric below detection threshold");
  const double times = std::floor(value / threshold);
  return static_cast<int>(std::clamp(times, 1.0, 10.0));
}

bool detect_god_class(const MetricVector& metrics, const GodClassThresholds& thresholds) {
  return metrics.atfd >= thresholds.atfd && metrics.wmc >= thresholds.wmc && metrics.tcc <= thresholds.tcc;
}

}  // namespace sabl::smell
