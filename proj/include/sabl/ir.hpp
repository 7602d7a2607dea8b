#pragma once

// TF-IDF vector space retrieval: the VSM and rVSM baseline techniques.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sabl/corpus.hpp"

namespace sabl::ir {

/// Raw technique output for one bug report: module id -> score.
using ScoreMap = std::map<std::string, double>;

struct WeightedTerm {
  std::uint32_t term;
  double weight;
};

/// Immutable inverted index. Term ids follow lexicographic term order and
/// documents keep corpus order, so construction is a pure function of the
/// corpus.
class TermIndex {
 public:
  /// weight(t, d) = (1 + ln tf) * ln(N / df). Throws Error("empty corpus").
  static TermIndex build(std::span<const corpus::TokenDocument> corpus);

  std::size_t num_documents() const { return doc_ids_.size(); }
  std::size_t num_terms() const { return vocabulary_.size(); }

  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  const std::vector<std::uint32_t>& doc_freq() const { return doc_freq_; }
  const std::vector<std::size_t>& doc_lengths() const { return doc_lengths_; }
  const std::vector<double>& doc_norms() const { return doc_norms_; }
  const std::vector<WeightedTerm>& doc_vector(std::size_t doc) const { return doc_vectors_[doc]; }

  std::optional<std::uint32_t> term_id(const std::string& term) const;
  double idf(std::uint32_t term) const;

  /// Cosine similarity of the query against every document, in doc order.
  std::vector<double> cosine(const corpus::TokenDocument& query) const;

  void save(const std::filesystem::path& path, std::uint64_t content_hash) const;

  /// Returns nullopt when the file is absent or was built from different
  /// content; throws Error when the file is corrupt.
  static std::optional<TermIndex> load(const std::filesystem::path& path, std::uint64_t content_hash);

  bool operator==(const TermIndex& other) const;

 private:
  struct Posting {
    std::uint32_t doc;
    double weight;
  };

  void finalize();

  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::uint32_t> term_ids_;
  std::vector<std::uint32_t> doc_freq_;
  std::vector<std::string> doc_ids_;
  std::vector<std::vector<WeightedTerm>> doc_vectors_;
  std::vector<std::size_t> doc_lengths_;
  std::vector<double> doc_norms_;
  std::vector<std::vector<Posting>> postings_;
};

inline TermIndex build_index(std::span<const corpus::TokenDocument> corpus) { return TermIndex::build(corpus); }

/// Cosine similarity in [0, 1] per module; zero-norm pairs score 0.
ScoreMap cosine_score(const corpus::TokenDocument& query, const TermIndex& index);

/// Logistic length weight 1 / (1 + exp(-norm(d))) with norm the min-max
/// normalized token count. When every document has the same length norm is
/// 0 and every weight is 0.5.
std::vector<double> length_weights(const TermIndex& index);

/// cosine(d) * length_weight(d).
ScoreMap rvsm_score(const corpus::TokenDocument& query, const TermIndex& index);

struct RankedModule {
  std::string module;
  double score;
  bool operator==(const RankedModule&) const = default;
};

struct ScoredRanking {
  std::string bug_id;
  std::string technique;
  std::vector<RankedModule> entries;  // score descending, ties by ascending module id
};

/// Throws Error("invalid score ...") naming the first non-finite module.
ScoredRanking rank(const ScoreMap& scores, std::string bug_id = {}, std::string technique = {});

/// Ordering used by every ranking in the project.
inline bool ranks_before(double score_a, const std::string& id_a, double score_b, const std::string& id_b) {
  if (score_a != score_b) return score_a > score_b;
  return id_a < id_b;
}

}  // namespace sabl::ir
