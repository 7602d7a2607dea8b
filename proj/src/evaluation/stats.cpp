#include <algorithm>
#include <cmath>
#include <cstdint>

#include "sabl/error.hpp"
#include "sabl/evaluation.hpp"

namespace sabl::eval {

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("wilcoxon: paired samples differ in length");

  std::vector<double> diffs;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    if (d != 0.0) diffs.push_back(d);
  }
  const std::size_t n = diffs.size();
  if (n < 6) throw Error("insufficient pairs");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return std::fabs(diffs[a]) < std::fabs(diffs[b]); });

  // Average ranks over ties of |d|; accumulate the tie correction.
  std::vector<double> ranks(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && std::fabs(diffs[order[j]]) == std::fabs(diffs[order[i]])) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }

  double w_plus = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (diffs[i] > 0.0) w_plus += ranks[i];
  }
  const double nd = static_cast<double>(n);
  const double mean = nd * (nd + 1.0) / 4.0;
  const double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0;
  double dev = w_plus - mean;
  if (dev > 0.0) {
    dev -= 0.5;
  } else if (dev < 0.0) {
    dev += 0.5;
  }
  WilcoxonResult r;
  r.statistic = w_plus;
  r.pairs = n;
  r.z = dev / std::sqrt(var);
  r.p_value = std::min(1.0, std::erfc(std::fabs(r.z) / std::sqrt(2.0)));
  return r;
}

std::string_view magnitude_name(EffectMagnitude m) {
  switch (m) {
    case EffectMagnitude::kNegligible: return "negligible";
    case EffectMagnitude::kSmall: return "small";
    case EffectMagnitude::kMedium: return "medium";
    case EffectMagnitude::kLarge: return "large";
  }
  return "unknown";
}

EffectMagnitude classify_effect(double d) {
  const double a = std::fabs(d);
  if (a < 0.147) return EffectMagnitude::kNegligible;
  if (a < 0.33) return EffectMagnitude::kSmall;
  if (a < 0.474) return EffectMagnitude::kMedium;
  return EffectMagnitude::kLarge;
}

CliffsDelta cliffs_delta(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw Error("cliffs delta: empty sample");
  std::vector<double> sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end());

  std::int64_t dominance = 0;
  for (double xi : x) {
    const auto below = std::lower_bound(sorted.begin(), sorted.end(), xi) - sorted.begin();
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), xi);
    dominance += below - above;
  }
  CliffsDelta out;
  out.d = static_cast<double>(dominance) / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
  out.magnitude = classify_effect(out.d);
  return out;
}

}  // namespace sabl::eval
