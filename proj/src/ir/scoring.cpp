#include <algorithm>
#include <cmath>

#include "sabl/error.hpp"
#include "sabl/ir.hpp"

namespace sabl::ir {

ScoreMap cosine_score(const corpus::TokenDocument& query, const TermIndex& index) {
  const std::vector<double> sims = index.cosine(query);
  ScoreMap out;
  for (std::size_t d = 0; d < sims.size(); ++d) out.emplace(index.doc_ids()[d], sims[d]);
  return out;
}

std::vector<double> length_weights(const TermIndex& index) {
  const auto& lengths = index.doc_lengths();
  std::vector<double> weights(lengths.size(), 0.5);
  if (lengths.empty()) return weights;
  const auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
  if (*lo == *hi) return weights;
  const double span = static_cast<double>(*hi - *lo);
  for (std::size_t d = 0; d < lengths.size(); ++d) {
    const double norm = static_cast<double>(lengths[d] - *lo) / span;
    weights[d] = 1.0 / (1.0 + std::exp(-norm));
  }
  return weights;
}

ScoreMap rvsm_score(const corpus::TokenDocument& query, const TermIndex& index) {
  const std::vector<double> sims = index.cosine(query);
  const std::vector<double> weights = length_weights(index);
  ScoreMap out;
  for (std::size_t d = 0; d < sims.size(); ++d) out.emplace(index.doc_ids()[d], weights[d] * sims[d]);
  return out;
}

ScoredRanking rank(const ScoreMap& scores, std::string bug_id, std::string technique) {
  ScoredRanking ranking{std::move(bug_id), std::move(technique), {}};
  ranking.entries.reserve(scores.size());
  for (const auto& [module, score] : scores) {
    if (!std::isfinite(score)) throw Error("invalid score for module " + module);
    ranking.entries.push_back({module, score});
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(), [](const RankedModule& a, const RankedModule& b) {
    return ranks_before(a.score, a.module, b.score, b.module);
  });
  return ranking;
}

}  // namespace sabl::ir
