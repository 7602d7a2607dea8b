#pragma once

// Code smell instances, aggregation configurations and the per-module smell value.

#include <array>
#include <bitset>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sabl::smell {

enum class Granularity : std::uint8_t { kClass, kMethod };

enum class SmellType : std::uint8_t {
  // class level
  kBlobClass,
  kDataClass,
  kDistortedHierarchy,
  kGodClass,
  kRefusedParentBequest,
  kSchizophrenicClass,
  kTraditionBreaker,
  // method level
  kBlobOperation,
  kDataClumps,
  kExternalDuplication,
  kFeatureEnvy,
  kIntensiveCoupling,
  kInternalDuplication,
  kMessageChains,
  kShotgunSurgery,
  kSiblingDuplication,
};

inline constexpr std::size_t kNumSmellTypes = 16;

std::string_view name(SmellType type);
Granularity granularity_of(SmellType type);

/// Accepts the display name ("God Class") case-insensitively, with or
/// without spaces ("godclass", "GodClass").
std::optional<SmellType> parse_smell_type(std::string_view text);

/// All sixteen types in declaration order.
std::span<const SmellType> all_smell_types();

class SmellTypeSet {
 public:
  SmellTypeSet() = default;
  SmellTypeSet(std::initializer_list<SmellType> types) {
    for (SmellType t : types) insert(t);
  }

  static SmellTypeSet all() {
    SmellTypeSet s;
    s.bits_.set();
    return s;
  }

  void insert(SmellType t) { bits_.set(static_cast<std::size_t>(t)); }
  bool contains(SmellType t) const { return bits_.test(static_cast<std::size_t>(t)); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool is_subset_of(const SmellTypeSet& other) const { return (bits_ & ~other.bits_).none(); }
  std::vector<SmellType> types() const;

  bool operator==(const SmellTypeSet&) const = default;

 private:
  std::bitset<kNumSmellTypes> bits_;
};

struct SmellInstance {
  SmellType type;
  std::string module;                 // host file module
  std::optional<std::string> method;  // signature, method-level types only
  int severity;                       // 1..10
};

/// Instances grouped by host module. Method-level smells count for their file.
class SmellReport {
 public:
  SmellReport() = default;
  explicit SmellReport(std::vector<SmellInstance> instances);

  const std::vector<SmellInstance>& instances() const { return instances_; }
  std::span<const SmellInstance> for_module(const std::string& module) const;
  std::vector<std::string> modules() const;
  bool empty() const { return instances_.empty(); }

 private:
  std::vector<SmellInstance> instances_;  // sorted by module, stable otherwise
  std::map<std::string, std::pair<std::size_t, std::size_t>, std::less<>> ranges_;
};

enum class GranularityFilter : std::uint8_t { kClass = 1, kMethod = 2, kBoth = 3 };

enum class Aggregator : std::uint8_t {
  kSum = 1,          // a1
  kMax,              // a2
  kExists,           // a3
  kCount,            // a4
  kMean,             // a5
  kMedian,           // a6
  kMeanTypeMax,      // a7
  kMedianTypeMax,    // a8
  kMeanTypeCount,    // a9
  kMedianTypeCount,  // a10
};

inline constexpr int kNumAggregators = 10;

struct SmellConfiguration {
  GranularityFilter granularity = GranularityFilter::kClass;
  Aggregator aggregator = Aggregator::kSum;
  SmellTypeSet selector = SmellTypeSet::all();
  std::string selector_label = "s1";

  /// "g3,a3,s5" style label.
  std::string label() const;
};

bool granularity_matches(GranularityFilter filter, SmellType type);

std::vector<SmellInstance> select_instances(std::span<const SmellInstance> instances,
                                            const SmellConfiguration& config);

/// 0 for an empty list under every aggregator.
double aggregate(std::span<const SmellInstance> instances, Aggregator aggregator);

/// Unnormalized smell value of one module.
double smell_value(const std::string& module, const SmellReport& report, const SmellConfiguration& config);

/// clamp(floor(value / threshold), 1, 10); throws Error when value is below
/// the threshold (no smell) or the threshold is not positive.
int severity_from_metric(double value, double threshold);

struct MetricVector {
  double atfd = 0.0;  // access to foreign data
  double wmc = 0.0;   // weighted method count
  double tcc = 0.0;   // tight class cohesion, [0, 1]
};

struct GodClassThresholds {
  double atfd;
  double wmc;
  double tcc;
};

/// atfd >= T_atfd and wmc >= T_wmc and tcc <= T_tcc.
bool detect_god_class(const MetricVector& metrics, const GodClassThresholds& thresholds);

}  // namespace sabl::smell
