#pragma once

// Text preprocessing: identifier splitting, normalization, corpus and query
// construction.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sabl::corpus {

enum class DocumentKind { kSource, kQuery };

struct RawDocument {
  std::string id;
  std::string text;
  DocumentKind kind = DocumentKind::kSource;
};

struct TokenDocument {
  std::string id;
  std::vector<std::string> tokens;

  bool operator==(const TokenDocument&) const = default;
};

/// Splits on non-alphanumeric characters, then splits each compound at
/// lower->upper transitions, letter<->digit transitions and before the last
/// capital of an acronym that starts a capitalized word ("HTTPServer" ->
/// "HTTP", "Server"). Only ASCII letters and digits are word characters.
std::vector<std::string> split_identifiers(std::string_view text);

class StopWords {
 public:
  StopWords() = default;
  explicit StopWords(std::unordered_set<std::string> words) : words_(std::move(words)) {}

  /// English function words plus Java keywords and literals.
  static StopWords standard();

  /// One term per line, UTF-8; blank lines ignored, terms lowercased.
  static StopWords load(const std::filesystem::path& path);

  bool contains(std::string_view term) const { return words_.contains(std::string(term)); }
  std::size_t size() const { return words_.size(); }
  std::vector<std::string> sorted_words() const;

 private:
  std::unordered_set<std::string> words_;
};

/// Lowercases, drops stopwords, single characters and digit runs, then
/// stems survivors. Stemming is iterated until the token is stable and the
/// filters are applied again to the stem, so the output is a fixed point:
/// normalizing it a second time returns it unchanged.
std::vector<std::string> normalize_tokens(std::span<const std::string> raw, const StopWords& stopwords);

struct PipelineOptions {
  /// Also emit the unsplit compound ahead of its parts (off by default).
  bool keep_compounds = false;
};

class Pipeline {
 public:
  Pipeline() : stopwords_(StopWords::standard()) {}
  explicit Pipeline(StopWords stopwords, PipelineOptions options = {})
      : stopwords_(std::move(stopwords)), options_(options) {}

  std::vector<std::string> tokenize(std::string_view text) const;
  TokenDocument process(const RawDocument& doc) const { return {doc.id, tokenize(doc.text)}; }

  const StopWords& stopwords() const { return stopwords_; }
  const PipelineOptions& options() const { return options_; }

  /// Changes whenever the stopword list or options change.
  std::uint64_t fingerprint() const;

 private:
  StopWords stopwords_;
  PipelineOptions options_;
};

struct CorpusOptions {
  std::vector<std::string> extensions{".java"};
  unsigned jobs = 1;
};

struct Corpus {
  std::vector<TokenDocument> documents;  // ascending by module path
  std::vector<std::string> warnings;
  std::uint64_t content_hash = 0;        // over paths and raw bytes
};

/// Source files under `root` (recursive) matching the configured
/// extensions, one document per file, ids are root-relative paths.
/// Throws InputError if root is not a directory.
Corpus build_corpus(const std::filesystem::path& root, const Pipeline& pipeline,
                    const CorpusOptions& options = {});

/// Module paths and content hash without tokenizing; used to validate caches.
struct SourceListing {
  std::vector<std::string> modules;
  std::uint64_t content_hash = 0;
  std::vector<std::string> warnings;
};
SourceListing list_sources(const std::filesystem::path& root, const CorpusOptions& options = {});

/// Summary and description joined by a space, then the corpus pipeline.
TokenDocument build_query(std::string id, std::string_view summary, std::string_view description,
                          const Pipeline& pipeline);

/// One JSON object per line: {"id": ..., "tokens": [...]}.
void write_corpus_jsonl(std::ostream& out, std::span<const TokenDocument> documents);

}  // namespace sabl::corpus
